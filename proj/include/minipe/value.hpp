#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace minipe {

class Value;
struct PairValue;

// Runtime data of the object language. Immutable; copies share structure.
class Value {
 public:
  enum class Kind { Int, Bool, Str, Pair, List, Nothing, Just };

  using List = std::vector<Value>;

  static Value integer(std::int64_t i) { return Value(Rep(std::in_place_index<0>, i)); }
  static Value boolean(bool b) { return Value(Rep(std::in_place_index<1>, b)); }
  static Value string(std::string s) { return Value(Rep(std::in_place_index<2>, std::move(s))); }
  static Value pair(Value first, Value second);
  static Value list(List items);
  static Value nothing() { return Value(Rep(std::in_place_index<5>, NothingTag{})); }
  static Value just(Value inner);

  Kind kind() const { return static_cast<Kind>(rep_.index()); }

  const std::int64_t* ifInt() const { return std::get_if<0>(&rep_); }
  const bool* ifBool() const { return std::get_if<1>(&rep_); }
  const std::string* ifStr() const { return std::get_if<2>(&rep_); }
  const PairValue* ifPair() const;
  const List* ifList() const;
  bool isNothing() const { return rep_.index() == 5; }
  const Value* ifJust() const;

  // True when this value is, or transitively contains, a list or a pair.
  bool containsAggregate() const;

 private:
  struct NothingTag {};
  using Rep = std::variant<std::int64_t, bool, std::string,
                           std::shared_ptr<const PairValue>,
                           std::shared_ptr<const List>, NothingTag,
                           std::shared_ptr<const Value>>;

  explicit Value(Rep rep) : rep_(std::move(rep)) {}

  Rep rep_;
};

struct PairValue {
  Value first;
  Value second;
};

inline Value Value::pair(Value first, Value second) {
  return Value(Rep(std::in_place_index<3>,
                   std::make_shared<const PairValue>(PairValue{std::move(first), std::move(second)})));
}

inline Value Value::list(List items) {
  return Value(Rep(std::in_place_index<4>, std::make_shared<const List>(std::move(items))));
}

inline Value Value::just(Value inner) {
  return Value(Rep(std::in_place_index<6>, std::make_shared<const Value>(std::move(inner))));
}

inline const PairValue* Value::ifPair() const {
  auto p = std::get_if<3>(&rep_);
  return p ? p->get() : nullptr;
}

inline const Value::List* Value::ifList() const {
  auto p = std::get_if<4>(&rep_);
  return p ? p->get() : nullptr;
}

inline const Value* Value::ifJust() const {
  auto p = std::get_if<6>(&rep_);
  return p ? p->get() : nullptr;
}

inline bool Value::containsAggregate() const {
  switch (kind()) {
    case Kind::Pair:
    case Kind::List:
      return true;
    case Kind::Just:
      return ifJust()->containsAggregate();
    default:
      return false;
  }
}

// Structural equality; values of different kinds are never equal.
inline bool valueEq(const Value& a, const Value& b) {
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case Value::Kind::Int:
      return *a.ifInt() == *b.ifInt();
    case Value::Kind::Bool:
      return *a.ifBool() == *b.ifBool();
    case Value::Kind::Str:
      return *a.ifStr() == *b.ifStr();
    case Value::Kind::Pair: {
      const PairValue* pa = a.ifPair();
      const PairValue* pb = b.ifPair();
      return pa == pb || (valueEq(pa->first, pb->first) && valueEq(pa->second, pb->second));
    }
    case Value::Kind::List: {
      const Value::List* la = a.ifList();
      const Value::List* lb = b.ifList();
      if (la == lb) return true;
      if (la->size() != lb->size()) return false;
      for (std::size_t i = 0; i < la->size(); ++i)
        if (!valueEq((*la)[i], (*lb)[i])) return false;
      return true;
    }
    case Value::Kind::Nothing:
      return true;
    case Value::Kind::Just:
      return valueEq(*a.ifJust(), *b.ifJust());
  }
  return false;
}

inline bool operator==(const Value& a, const Value& b) { return valueEq(a, b); }

inline std::size_t hashCombine(std::size_t seed, std::size_t h) {
  return seed ^ (h + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

// Consistent with valueEq.
inline std::size_t hashValue(const Value& v) {
  std::size_t seed = static_cast<std::size_t>(v.kind());
  switch (v.kind()) {
    case Value::Kind::Int:
      return hashCombine(seed, std::hash<std::int64_t>{}(*v.ifInt()));
    case Value::Kind::Bool:
      return hashCombine(seed, std::hash<bool>{}(*v.ifBool()));
    case Value::Kind::Str:
      return hashCombine(seed, std::hash<std::string>{}(*v.ifStr()));
    case Value::Kind::Pair:
      seed = hashCombine(seed, hashValue(v.ifPair()->first));
      return hashCombine(seed, hashValue(v.ifPair()->second));
    case Value::Kind::List:
      for (const Value& item : *v.ifList()) seed = hashCombine(seed, hashValue(item));
      return seed;
    case Value::Kind::Nothing:
      return seed;
    case Value::Kind::Just:
      return hashCombine(seed, hashValue(*v.ifJust()));
  }
  return seed;
}

inline void writeStringLiteral(std::ostream& os, const std::string& s) {
  os << '"';
  for (char c : s) {
    if (c == '"' || c == '\\') os << '\\';
    os << c;
  }
  os << '"';
}

// Prints the value-literal form accepted by the parser.
inline std::ostream& operator<<(std::ostream& os, const Value& v) {
  switch (v.kind()) {
    case Value::Kind::Int:
      return os << *v.ifInt();
    case Value::Kind::Bool:
      return os << (*v.ifBool() ? "true" : "false");
    case Value::Kind::Str:
      writeStringLiteral(os, *v.ifStr());
      return os;
    case Value::Kind::Pair:
      return os << '(' << v.ifPair()->first << ',' << v.ifPair()->second << ')';
    case Value::Kind::List: {
      os << '[';
      bool first = true;
      for (const Value& item : *v.ifList()) {
        if (!first) os << ',';
        first = false;
        os << item;
      }
      return os << ']';
    }
    case Value::Kind::Nothing:
      return os << "nothing";
    case Value::Kind::Just:
      return os << "just(" << *v.ifJust() << ')';
  }
  return os;
}

inline std::string toString(const Value& v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

}  // namespace minipe

#pragma once

#include <map>
#include <memory>
#include <string>
#include <variant>
#include <vector>

namespace shuttlesense::canon {

// Minimal JSON value used for canonical serialization: object keys are kept
// sorted and every number is printed with %.9g so byte-identical output is
// reproducible across runs.
class Value;
using Object = std::map<std::string, Value>;
using Array = std::vector<Value>;

class Value {
public:
    Value() : data_(nullptr) {}
    Value(std::nullptr_t) : data_(nullptr) {}
    Value(bool b) : data_(b) {}
    Value(double d) : data_(d) {}
    Value(int i) : data_(static_cast<double>(i)) {}
    Value(long long i) : data_(static_cast<double>(i)) {}
    Value(unsigned long long i) : data_(static_cast<double>(i)) {}
    Value(const char* s) : data_(std::string(s)) {}
    Value(std::string s) : data_(std::move(s)) {}
    Value(Array a) : data_(std::move(a)) {}
    Value(Object o) : data_(std::move(o)) {}

    void dump(std::string& out) const;
    std::string dump() const;

private:
    std::variant<std::nullptr_t, bool, double, std::string, Array, Object> data_;
};

std::string format_number(double v); // %.9g with stable specials

} // namespace shuttlesense::canon

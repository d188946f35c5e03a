#include "emu/variables.hpp"

#include <algorithm>
#include <set>

#include "emu/energy_value.hpp"
#include "emu/errors.hpp"

namespace emu {

VariableSet::VariableSet(std::vector<std::string> names, const std::vector<std::string>& inputs)
    : names_(std::move(names)) {
  if (names_.size() > static_cast<std::size_t>(kMaxVariables)) {
    throw CapacityError("at most " + std::to_string(kMaxVariables) + " variables are supported, got " +
                        std::to_string(names_.size()));
  }
  std::set<std::string> seen;
  for (const auto& n : names_) {
    if (n.empty()) throw DomainError("empty variable name");
    if (!seen.insert(n).second) throw DomainError("duplicate variable '" + n + "'");
  }
  for (const auto& in : inputs) {
    const auto idx = index_of(in);
    if (!idx) throw DomainError("input '" + in + "' is not a declared variable");
    input_mask_ |= StateBits{1} << *idx;
  }
}

std::optional<int> VariableSet::index_of(std::string_view name) const {
  const auto it = std::find(names_.begin(), names_.end(), name);
  if (it == names_.end()) return std::nullopt;
  return static_cast<int>(it - names_.begin());
}

std::vector<std::string> VariableSet::input_names() const {
  std::vector<std::string> out;
  for (int i = 0; i < size(); ++i) {
    if (is_input(i)) out.push_back(names_[static_cast<std::size_t>(i)]);
  }
  return out;
}

VariableSet VariableSet::with_outputs(const std::vector<std::string>& extra) const {
  std::vector<std::string> all = names_;
  all.insert(all.end(), extra.begin(), extra.end());
  return VariableSet(std::move(all), input_names());
}

std::string VariableSet::describe(State s) const {
  std::string out;
  for (int i = 0; i < size(); ++i) {
    if (i) out += ' ';
    out += name(i);
    out += s.get(i) ? "=1" : "=0";
  }
  return out;
}

std::string VariableSet::to_assertion_text(State s) const {
  if (names_.empty()) return "true";
  std::string out;
  for (int i = 0; i < size(); ++i) {
    if (i) out += " & ";
    if (!s.get(i)) out += '!';
    out += name(i);
  }
  return out;
}

CreditBound CreditBound::parse(const std::string& text) {
  if (text == "inf" || text == "+inf" || text == "infinite") return CreditBound::infinite();
  if (text.empty() || !std::all_of(text.begin(), text.end(), [](char ch) { return ch >= '0' && ch <= '9'; })) {
    throw DomainError("bound must be a natural number or 'inf', got '" + text + "'");
  }
  std::uint64_t v = 0;
  for (char ch : text) {
    if (v > (kMaxFiniteBound - static_cast<std::uint64_t>(ch - '0')) / 10) {
      throw DomainError("bound '" + text + "' is too large");
    }
    v = v * 10 + static_cast<std::uint64_t>(ch - '0');
  }
  return CreditBound::finite(v);
}

}  // namespace emu

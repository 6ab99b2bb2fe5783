#include "elimkit/atom.hpp"

#include <cctype>

#include "elimkit/error.hpp"

namespace elimkit {

bool Term::ground() const {
  if (variable) return false;
  for (const auto& a : args)
    if (!a.ground()) return false;
  return true;
}

std::string Term::str() const {
  if (args.empty()) return name;
  std::string out = name + "(";
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (i) out += ",";
    out += args[i].str();
  }
  return out + ")";
}

Atom::Atom(std::string base, std::uint32_t group, std::vector<Term> args)
    : base_(std::move(base)), group_(group), args_(std::move(args)) {
  if (base_.empty()) throw PreconditionError("atom base must be nonempty");
  if (std::isdigit(static_cast<unsigned char>(base_.back())))
    throw PreconditionError("atom base '" + base_ + "' must not end in a digit");
  name_ = base_;
  if (group_ > 0) name_ += std::to_string(group_);
  if (!args_.empty()) {
    name_ += "(";
    for (std::size_t i = 0; i < args_.size(); ++i) {
      if (i) name_ += ",";
      name_ += args_[i].str();
    }
    name_ += ")";
  }
}

Atom Atom::from_functor(std::string_view functor, std::vector<Term> args) {
  std::size_t end = functor.size();
  while (end > 0 && std::isdigit(static_cast<unsigned char>(functor[end - 1]))) --end;
  if (end == 0)
    throw PreconditionError("functor '" + std::string(functor) + "' has no base name");
  std::uint32_t group = 0;
  if (end < functor.size()) {
    auto digits = functor.substr(end);
    if (digits.size() > 9)
      throw PreconditionError("group number too large in '" + std::string(functor) + "'");
    group = static_cast<std::uint32_t>(std::stoul(std::string(digits)));
  }
  return Atom(std::string(functor.substr(0, end)), group, std::move(args));
}

bool Atom::ground() const {
  for (const auto& a : args_)
    if (!a.ground()) return false;
  return true;
}

}  // namespace elimkit

#ifndef DNB_VARSET_HPP
#define DNB_VARSET_HPP

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace dnb {

//! Immutable ordered list of variable names shared by all expressions of one
//! computation. Cheap to copy; equality is by value. By convention the first
//! N entries are the coordinates u^1..u^N and any trailing entries are formal
//! parameters (pencil coefficients and the like), which derivative loops skip.
class varset {
public:
  varset() : names_(std::make_shared<const std::vector<std::string>>()) {}
  explicit varset(std::vector<std::string> names)
      : names_(std::make_shared<const std::vector<std::string>>(std::move(names))) {}

  //! u1..uN.
  static varset coords(std::size_t n) {
    std::vector<std::string> v;
    v.reserve(n);
    for (std::size_t i = 1; i <= n; ++i) v.push_back("u" + std::to_string(i));
    return varset(std::move(v));
  }

  std::size_t size() const { return names_->size(); }
  const std::string& name(std::size_t i) const { return (*names_)[i]; }
  const std::vector<std::string>& names() const { return *names_; }

  std::optional<std::size_t> index(std::string_view name) const {
    for (std::size_t i = 0; i < names_->size(); ++i)
      if ((*names_)[i] == name) return i;
    return std::nullopt;
  }

  //! Same set extended with extra trailing names.
  varset extended(const std::vector<std::string>& extra) const {
    std::vector<std::string> v = *names_;
    v.insert(v.end(), extra.begin(), extra.end());
    return varset(std::move(v));
  }

  bool operator==(const varset& o) const {
    return names_ == o.names_ || *names_ == *o.names_;
  }
  bool operator!=(const varset& o) const { return !(*this == o); }

private:
  std::shared_ptr<const std::vector<std::string>> names_;
};

} // namespace dnb

#endif

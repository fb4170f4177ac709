#include "carriers.hpp"

#include "zdring/error.hpp"

namespace zdring::detail {

std::optional<Elem> Carrier::parse(std::string_view) const { return std::nullopt; }

namespace {

// Splits "(a,b,...)" at top-level commas; nullopt if the text is not a tuple.
std::optional<std::vector<std::string_view>> split_tuple(std::string_view text) {
  if (text.size() < 2 || text.front() != '(' || text.back() != ')') return std::nullopt;
  text = text.substr(1, text.size() - 2);
  std::vector<std::string_view> parts;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    if (c == '(') ++depth;
    if (c == ')' && --depth < 0) return std::nullopt;
    if (c == ',' && depth == 0) {
      parts.push_back(text.substr(start, i - start));
      start = i + 1;
    }
  }
  if (depth != 0) return std::nullopt;
  parts.push_back(text.substr(start));
  return parts;
}

}  // namespace

ProductCarrier::ProductCarrier(std::vector<RingPtr> factors) : factors_(std::move(factors)) {
  std::vector<Elem> ones;
  for (const auto& f : factors_) {
    size_ *= f->size();
    ones.push_back(f->one());
  }
  one_ = join(ones);
}

std::vector<Elem> ProductCarrier::split(Elem a) const {
  std::vector<Elem> parts(factors_.size());
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    auto m = static_cast<Elem>(factors_[i]->size());
    parts[i] = a % m;
    a /= m;
  }
  return parts;
}

Elem ProductCarrier::join(const std::vector<Elem>& parts) const {
  Elem a = 0;
  for (std::size_t i = factors_.size(); i-- > 0;) {
    a = a * static_cast<Elem>(factors_[i]->size()) + parts[i];
  }
  return a;
}

Elem ProductCarrier::add(Elem a, Elem b) const {
  Elem r = 0, scale = 1;
  for (const auto& f : factors_) {
    auto m = static_cast<Elem>(f->size());
    r += scale * f->add(a % m, b % m);
    a /= m;
    b /= m;
    scale *= m;
  }
  return r;
}

Elem ProductCarrier::mul(Elem a, Elem b) const {
  Elem r = 0, scale = 1;
  for (const auto& f : factors_) {
    auto m = static_cast<Elem>(f->size());
    r += scale * f->mul(a % m, b % m);
    a /= m;
    b /= m;
    scale *= m;
  }
  return r;
}

Elem ProductCarrier::neg(Elem a) const {
  Elem r = 0, scale = 1;
  for (const auto& f : factors_) {
    auto m = static_cast<Elem>(f->size());
    r += scale * f->neg(a % m);
    a /= m;
    scale *= m;
  }
  return r;
}

std::string ProductCarrier::label(Elem a) const {
  auto parts = split(a);
  std::string s = "(";
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) s += ',';
    s += factors_[i]->label(parts[i]);
  }
  return s + ")";
}

std::optional<Elem> ProductCarrier::parse(std::string_view text) const {
  auto parts = split_tuple(text);
  if (!parts || parts->size() != factors_.size()) return std::nullopt;
  std::vector<Elem> elems;
  for (std::size_t i = 0; i < parts->size(); ++i) {
    elems.push_back(factors_[i]->parse_element((*parts)[i]));
  }
  return join(elems);
}

IdealizationCarrier::IdealizationCarrier(RingPtr base, FiniteRing::Quotient module)
    : base_(std::move(base)), module_(std::move(module)) {}

Elem IdealizationCarrier::add(Elem a, Elem b) const {
  auto n = static_cast<Elem>(base_->size());
  const auto& m = *module_.ring;
  return pack(base_->add(a % n, b % n), m.add(a / n, b / n));
}

Elem IdealizationCarrier::mul(Elem a, Elem b) const {
  auto n = static_cast<Elem>(base_->size());
  const auto& m = *module_.ring;
  Elem r = a % n, x = a / n, s = b % n, y = b / n;
  Elem ry = m.mul(module_.projection[r], y);
  Elem sx = m.mul(module_.projection[s], x);
  return pack(base_->mul(r, s), m.add(ry, sx));
}

Elem IdealizationCarrier::neg(Elem a) const {
  auto n = static_cast<Elem>(base_->size());
  return pack(base_->neg(a % n), module_.ring->neg(a / n));
}

std::string IdealizationCarrier::label(Elem a) const {
  auto n = static_cast<Elem>(base_->size());
  return "(" + base_->label(a % n) + "," + module_.ring->label(a / n) + ")";
}

std::optional<Elem> IdealizationCarrier::parse(std::string_view text) const {
  auto parts = split_tuple(text);
  if (!parts || parts->size() != 2) return std::nullopt;
  return pack(base_->parse_element((*parts)[0]), module_.ring->parse_element((*parts)[1]));
}

DerivedCarrier::DerivedCarrier(std::shared_ptr<const Carrier> parent, std::vector<Elem> reps,
                               std::vector<Elem> map, Elem one)
    : parent_(std::move(parent)), reps_(std::move(reps)), map_(std::move(map)), one_(one) {}

std::optional<Elem> DerivedCarrier::parse(std::string_view text) const {
  auto lift = parent_->parse(text);
  if (!lift) {
    for (Elem a = 0; a < parent_->size(); ++a) {
      if (parent_->label(a) == text) {
        lift = a;
        break;
      }
    }
  }
  if (!lift || map_[*lift] == kAbsent) return std::nullopt;
  return map_[*lift];
}

}  // namespace zdring::detail

#include "gmcat/dalgebra.hpp"

#include <numeric>

namespace gmcat {

FinAlgebra::FinAlgebra(std::string name, Monad monad, FinCategory category, Xi xi0, Xi xi1)
    : name_(std::move(name)),
      monad_(std::move(monad)),
      category_(std::make_shared<const FinCategory>(std::move(category))),
      xi0_(std::move(xi0)),
      xi1_(std::move(xi1)) {}

FinAlgebra::Obj FinAlgebra::xi0(const DElem<Obj>& e) const {
  if (e.degree != Degree::object) throw StructuralError("xi0: element must have degree 0");
  const Obj x = xi0_(e);
  if (x >= category_->objects.size()) throw InvariantViolation("xi0 returned an unknown object");
  return x;
}

FinAlgebra::Mor FinAlgebra::xi1(const DElem<Mor>& e) const {
  if (e.degree != Degree::morphism) throw StructuralError("xi1: element must have degree 1");
  const Mor c = xi1_(e);
  if (c >= category_->morphisms.size()) throw InvariantViolation("xi1 returned an unknown morphism");
  return c;
}

std::vector<FinAlgebra::Obj> FinAlgebra::objects(std::size_t) const {
  std::vector<Obj> out(category_->objects.size());
  std::iota(out.begin(), out.end(), std::size_t{0});
  return out;
}

std::vector<FinAlgebra::Mor> FinAlgebra::morphisms_into(Obj x, std::size_t) const {
  return category_->morphisms_into(x);
}

FinAlgebra FinAlgebra::with_xi0(Xi xi0) const {
  FinAlgebra copy = *this;
  copy.xi0_ = std::move(xi0);
  return copy;
}

namespace {

FinAlgebra discrete_algebra(std::string name, const Monad& monad, std::size_t modulus, FinAlgebra::Xi xi0) {
  if (modulus == 0) throw PreconditionError("discrete algebra needs a nonempty carrier");
  FinCategory c = FinCategory::discrete(FinSet::range(modulus));
  auto source = c.source;
  // discrete carrier: every morphism of D C goes to the identity on xi0 of its source
  auto xi1 = [xi0, source, monad](const DElem<std::size_t>& e) {
    return xi0(monad.source(monad.map(e, [&](std::size_t m) { return source(m); })));
  };
  return FinAlgebra(std::move(name), monad, std::move(c), std::move(xi0), std::move(xi1));
}

}  // namespace

FinAlgebra sum_algebra(const Monad& monad, std::size_t modulus) {
  return discrete_algebra("sum-z" + std::to_string(modulus), monad, modulus, [modulus](const DElem<std::size_t>& e) {
    return std::accumulate(e.xs.begin(), e.xs.end(), std::size_t{0}) % modulus;
  });
}

FinAlgebra first_entry_algebra(const Monad& monad, std::size_t modulus) {
  return discrete_algebra("first-z" + std::to_string(modulus), monad, modulus,
                          [](const DElem<std::size_t>& e) { return e.xs.empty() ? std::size_t{0} : e.xs.front(); });
}

FinAlgebra tabulated_algebra(std::string name, const Monad& monad, FinCategory category,
                             std::map<DElem<std::size_t>, std::size_t> xi0,
                             std::map<DElem<std::size_t>, std::size_t> xi1) {
  auto lookup = [](std::shared_ptr<const std::map<DElem<std::size_t>, std::size_t>> table, const char* what) {
    return [table, what](const DElem<std::size_t>& e) {
      auto it = table->find(e);
      if (it == table->end()) {
        throw TruncationError(std::string(what) + ": no table entry at arity " + std::to_string(e.arity));
      }
      return it->second;
    };
  };
  auto t0 = std::make_shared<const std::map<DElem<std::size_t>, std::size_t>>(std::move(xi0));
  auto t1 = std::make_shared<const std::map<DElem<std::size_t>, std::size_t>>(std::move(xi1));
  return FinAlgebra(std::move(name), monad, std::move(category), lookup(t0, "xi0"), lookup(t1, "xi1"));
}

FinCategory cyclic_group_category(std::size_t order) {
  if (order == 0) throw PreconditionError("cyclic group needs positive order");
  CategoryBuilder b;
  b.add_object("*");
  auto name = [&](std::size_t i) { return FinSet::range(order, "g").label(i); };
  for (std::size_t i = 0; i < order; ++i) b.add_morphism(name(i), "*", "*");
  b.set_identity("*", name(0));
  for (std::size_t i = 0; i < order; ++i) {
    for (std::size_t j = 0; j < order; ++j) b.add_composite(name(i), name(j), name((i + j) % order));
  }
  return b.build();
}

// ---------------------------------------------------------------------------

FreeAlgebra::FreeAlgebra(Monad monad, FinCategory category)
    : monad_(std::move(monad)), category_(std::make_shared<const FinCategory>(std::move(category))) {}

FreeAlgebra::Obj FreeAlgebra::source(const Mor& c) const {
  return monad_.source(monad_.map(c, [&](std::size_t m) { return category_->source(m); }));
}

FreeAlgebra::Obj FreeAlgebra::target(const Mor& c) const {
  return monad_.target(monad_.map(c, [&](std::size_t m) { return category_->target(m); }));
}

FreeAlgebra::Mor FreeAlgebra::identity(const Obj& x) const {
  return monad_.identity(monad_.map(x, [&](std::size_t o) { return category_->identity(o); }));
}

FreeAlgebra::Mor FreeAlgebra::compose(const Mor& g, const Mor& f) const {
  if (source(g) != target(f)) throw StructuralError("free algebra: morphisms are not composable");
  return monad_.compose_with(g, f, [&](std::size_t x, std::size_t y) { return category_->compose_or_throw(x, y); });
}

std::vector<FreeAlgebra::Obj> FreeAlgebra::objects(std::size_t bound) const {
  std::vector<std::size_t> carrier(category_->objects.size());
  std::iota(carrier.begin(), carrier.end(), std::size_t{0});
  return monad_.elements_up_to(Degree::object, carrier, bound);
}

std::vector<FreeAlgebra::Mor> FreeAlgebra::morphisms_into(const Obj& x, std::size_t) const {
  return d_morphisms_into<std::size_t, std::size_t>(monad_, x,
                                                    [&](std::size_t o) { return category_->morphisms_into(o); });
}

std::string FreeAlgebra::describe(const Mor& c) const {
  return monad_.describe(c, [&](std::size_t m) { return category_->morphisms.label(m); });
}

std::string FreeAlgebra::describe_object(const Obj& x) const {
  return monad_.describe(x, [&](std::size_t o) { return category_->objects.label(o); });
}

}  // namespace gmcat

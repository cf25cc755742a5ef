#include "bishop/semantic_value.hpp"

#include <sstream>

#include "bishop/error.hpp"

namespace bishop {

namespace {

[[noreturn]] void fail(const std::string& why) { throw Error(Errc::kCompositionFailed, why); }

bool is_connective(ComposerKind k) {
  return k == ComposerKind::Bridge || k == ComposerKind::GroupSplit ||
         k == ComposerKind::Identity;
}

Concept run_nullary(const ComposerInstance& inst, const World& world, const Lexicon& lexicon) {
  const LexicalEntry& e = *inst.entry;
  switch (e.composer.kind) {
    case ComposerKind::Identity:
      return default_concept(world, e.ref);
    case ComposerKind::ColourProbabilistic: {
      Concept c = compose_colour(lexicon.colour_model(e.composer.model),
                                 default_concept(world, RefBehaviour::Single), world);
      if (e.ref == RefBehaviour::Group) c.ref_kind = RefKind::Group;
      return c;
    }
    default:
      fail("composer '" + e.word + "' cannot run without arguments");
  }
}

Concept run_unary(const ComposerInstance& inst, const Concept& c, const World& world,
                  const Lexicon& lexicon) {
  const LexicalEntry& e = *inst.entry;
  const ComposerSpec& spec = e.composer;
  switch (spec.kind) {
    case ComposerKind::ColourProbabilistic:
      return compose_colour(lexicon.colour_model(spec.model), c, world);
    case ComposerKind::OrderingExtremum:
    case ComposerKind::OrderingRegion:
      return compose_ordering(spec.ordering, inst.position, c, world);
    case ComposerKind::Grouping: {
      auto groups = compose_grouping(spec.count, c, world);
      if (groups.empty()) fail("grouping: no qualifying group");
      return std::move(groups.front());
    }
    case ComposerKind::Anaphoric:
      return compose_anaphora(world);
    case ComposerKind::Select:
      return compose_select(c, spec.determinate);
    case ComposerKind::Identity:
      return c;
    default:
      fail("composer '" + e.word + "' does not take one argument");
  }
}

Concept evaluate(const Function& f, const World& world, const Lexicon& lexicon) {
  Concept c = run_nullary(f.chain.back(), world, lexicon);
  Function outer{std::vector<ComposerInstance>(f.chain.begin(), f.chain.end() - 1)};
  return chain_flush(outer, std::move(c), world, lexicon);
}

/// Arity-0 functions become concepts; everything else is left alone.
Value normalize(const Value& v, const World& world, const Lexicon& lexicon) {
  if (const auto* f = std::get_if<Function>(&v); f && f->arity() == 0) {
    return evaluate(*f, world, lexicon);
  }
  return v;
}

Concept with_pp(Concept c) {
  c.has_pp = true;
  return c;
}

Concept run_binary(const ComposerInstance& inst, const Value& a, const Value& b,
                   const World& world, const Lexicon& lexicon) {
  const LexicalEntry& e = *inst.entry;
  const Concept* ca = as_concept(a);
  const Concept* cb = as_concept(b);
  const auto* fa = std::get_if<Function>(&a);
  const auto* fb = std::get_if<Function>(&b);
  switch (e.composer.kind) {
    case ComposerKind::Bridge:
      if (ca && fb && ca->refers() && fb->arity() == 1) {
        return with_pp(chain_flush(*fb, *ca, world, lexicon));
      }
      if (fa && cb && cb->refers() && fa->arity() == 1) {
        return with_pp(chain_flush(*fa, *cb, world, lexicon));
      }
      fail("bridge: needs one concept and one unary function");
    case ComposerKind::GroupSplit:
      if (ca && cb) return restrict_to_group(*ca, *cb, world);
      if (fa && cb && cb->refers() && fa->arity() == 1) {
        Concept marked = *cb;
        marked.split_groups = true;
        return chain_flush(*fa, std::move(marked), world, lexicon);
      }
      fail("of: unsupported argument shapes");
    case ComposerKind::Spatial:
      if (ca && cb) return compose_spatial(e.composer.direction, *ca, *cb, world);
      fail("spatial: both arguments must be concepts");
    default:
      fail("composer '" + e.word + "' does not take two arguments");
  }
}

}  // namespace

std::string Function::label() const {
  std::string out = "fn[";
  for (std::size_t i = 0; i < chain.size(); ++i) {
    if (i) out += ",";
    out += chain[i].entry->composer.label();
  }
  return out + "]";
}

std::string Function::identity() const {
  std::ostringstream out;
  out << "F";
  for (const auto& inst : chain) {
    out << ':' << static_cast<const void*>(inst.entry) << '@' << inst.position;
  }
  return out.str();
}

Value leaf_value(const LexicalEntry& entry, int position) {
  return Function{{ComposerInstance{&entry, position}}};
}

std::string value_identity(const Value& v) {
  if (const auto* c = std::get_if<Concept>(&v)) return "C" + c->identity();
  return std::get<Function>(v).identity();
}

const Concept* as_concept(const Value& v) { return std::get_if<Concept>(&v); }

Concept chain_flush(const Function& f, Concept c, const World& world, const Lexicon& lexicon) {
  if (!c.refers()) fail("chain: argument does not refer");
  for (auto it = f.chain.rbegin(); it != f.chain.rend(); ++it) {
    c = run_unary(*it, c, world, lexicon);
  }
  return c;
}

std::vector<Value> apply_value(const Value& head, const std::vector<const Value*>& args,
                               const World& world, const Lexicon& lexicon) {
  const auto* f = std::get_if<Function>(&head);
  if (!f) fail("a concept cannot be applied");

  if (args.empty()) {
    if (f->arity() == 0) return {evaluate(*f, world, lexicon)};
    if (f->arity() == 1 || is_connective(f->kind())) return {head};
    fail("composer expects arguments the rule does not provide");
  }
  if (static_cast<int>(args.size()) != f->arity()) fail("arity mismatch");

  if (args.size() == 1) {
    const Value arg = normalize(*args[0], world, lexicon);
    if (const auto* c = as_concept(arg)) return {chain_flush(*f, *c, world, lexicon)};
    Function chained = *f;
    const auto& inner = std::get<Function>(arg).chain;
    chained.chain.insert(chained.chain.end(), inner.begin(), inner.end());
    return {chained};
  }

  if (args.size() == 2) {
    const Value a = normalize(*args[0], world, lexicon);
    const Value b = normalize(*args[1], world, lexicon);
    Concept c = run_binary(f->chain.back(), a, b, world, lexicon);
    Function outer{std::vector<ComposerInstance>(f->chain.begin(), f->chain.end() - 1)};
    return {chain_flush(outer, std::move(c), world, lexicon)};
  }
  fail("composers take at most two arguments");
}

}  // namespace bishop

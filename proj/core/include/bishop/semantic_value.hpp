#pragma once

#include <string>
#include <variant>
#include <vector>

#include "bishop/composers.hpp"
#include "bishop/lexicon.hpp"

namespace bishop {

/// A lexical composer together with the token position it came from.
struct ComposerInstance {
  const LexicalEntry* entry = nullptr;
  int position = 0;
};

/// A composer (or a queued chain of them) still waiting for its arguments.
/// chain.front() is the outermost composer; the innermost one, chain.back(),
/// receives the arguments and decides the arity.
struct Function {
  std::vector<ComposerInstance> chain;

  int arity() const { return chain.back().entry->arity; }
  ComposerKind kind() const { return chain.back().entry->composer.kind; }
  /// "fn[S,O.x.min]"
  std::string label() const;
  std::string identity() const;
};

using Value = std::variant<Function, Concept>;

Value leaf_value(const LexicalEntry& entry, int position);

std::string value_identity(const Value& v);
const Concept* as_concept(const Value& v);

/// Applies `head` to `args` as one template of a completed rule. Returns the
/// alternative results; throws bishop::Error (or returns nothing) when the rule
/// must not fire.
///
/// With no arguments an arity-0 function is evaluated, a unary function or a
/// connective is passed up unchanged, and anything else fails. Unary
/// composers given a function argument queue up into a longer chain, which is
/// flushed innermost-first once a referring concept arrives.
std::vector<Value> apply_value(const Value& head, const std::vector<const Value*>& args,
                               const World& world, const Lexicon& lexicon);

/// Runs a chain over a referring concept: the last composer first.
Concept chain_flush(const Function& f, Concept c, const World& world, const Lexicon& lexicon);

}  // namespace bishop

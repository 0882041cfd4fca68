#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "sparqlog/ast.hpp"

namespace sparqlog {

/// The structural template catalog for property paths, ordered as reported.
/// Atoms stand for plain IRIs with ^a and !a folded in; each parameterized
/// template also matches its mirror form.
enum class PathTemplate : std::uint8_t {
  AltStar,        // (a1|...|ak)*
  Star,           // a*
  Seq,            // a1/.../ak
  StarSeq,        // a*/b   (and b/a*)
  Alt,            // a1|...|ak
  Plus,           // a+
  OptSeq,         // a1?/.../ak?
  SeqAlt,         // a(b1|...|bk)
  SeqOptTail,     // a1/a2?/.../ak?
  SeqStarOrAlt,   // (a/b*)|c
  StarOptPair,    // a*/b?
  SeqSeqStar,     // a/b/c*
  NegatedAlt,     // !(a|b)
  AltPlus,        // (a1|...|ak)+
  AltAltSeq,      // (a1|...|ak)(a1|...|ak)
  OptAltPair,     // a?|b
  StarAltPair,    // a*|b
  AltOpt,         // (a|b)?
  PlusAltPair,    // a|b+
  PlusPlusPair,   // a+|b+
  SeqUnderStar,   // (a/b)*
  // outside the navigational table
  Link,           // a bare (parenthesized) IRI
  BareInverse,    // ^a
  BareNegation,   // !a
  Other,
  kCount
};

constexpr std::size_t kPathTemplateCount = static_cast<std::size_t>(PathTemplate::kCount);

const char* path_template_label(PathTemplate t);

struct PathClass {
  PathTemplate template_id = PathTemplate::Other;
  std::optional<int> k;      // arity for parameterized templates
  bool navigational = true;  // false for Link, BareInverse, BareNegation
};

/// Normalized path form: ^a and !a collapse to atoms, Seq/Alt flatten to
/// n-ary lists.
struct NormalPath {
  enum class Kind { Atom, NegatedSet, Seq, Alt, Star, Plus, Opt };
  Kind kind = Kind::Atom;
  int negated_size = 0;               // NegatedSet
  std::vector<NormalPath> children;   // Seq/Alt: 2+; Star/Plus/Opt: 1
  bool operator==(const NormalPath&) const = default;
};

NormalPath normalize_path(const PropertyPath& path);

PathClass classify_path(const PropertyPath& path);

}  // namespace sparqlog

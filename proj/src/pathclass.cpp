#include "sparqlog/pathclass.hpp"

#include <algorithm>

namespace sparqlog {

const char* path_template_label(PathTemplate t) {
  switch (t) {
    case PathTemplate::AltStar: return "(a1|...|ak)*";
    case PathTemplate::Star: return "a*";
    case PathTemplate::Seq: return "a1/.../ak";
    case PathTemplate::StarSeq: return "a*/b";
    case PathTemplate::Alt: return "a1|...|ak";
    case PathTemplate::Plus: return "a+";
    case PathTemplate::OptSeq: return "a1?/.../ak?";
    case PathTemplate::SeqAlt: return "a(b1|...|bk)";
    case PathTemplate::SeqOptTail: return "a1/a2?/.../ak?";
    case PathTemplate::SeqStarOrAlt: return "(a/b*)|c";
    case PathTemplate::StarOptPair: return "a*/b?";
    case PathTemplate::SeqSeqStar: return "a/b/c*";
    case PathTemplate::NegatedAlt: return "!(a|b)";
    case PathTemplate::AltPlus: return "(a1|...|ak)+";
    case PathTemplate::AltAltSeq: return "(a1|...|ak)(a1|...|ak)";
    case PathTemplate::OptAltPair: return "a?|b";
    case PathTemplate::StarAltPair: return "a*|b";
    case PathTemplate::AltOpt: return "(a|b)?";
    case PathTemplate::PlusAltPair: return "a|b+";
    case PathTemplate::PlusPlusPair: return "a+|b+";
    case PathTemplate::SeqUnderStar: return "(a/b)*";
    case PathTemplate::Link: return "a";
    case PathTemplate::BareInverse: return "^a";
    case PathTemplate::BareNegation: return "!a";
    case PathTemplate::Other: return "other";
    case PathTemplate::kCount: break;
  }
  return "?";
}

namespace {

/// Normalization with inverse push-down: ^(p/q) = ^q/^p, ^(p|q) = ^p|^q,
/// ^(p*) = (^p)*, and ^a folds into an atom.
NormalPath normalize(const PropertyPath& p, bool inverted) {
  using PK = PropertyPath::Kind;
  using NK = NormalPath::Kind;
  NormalPath out;
  switch (p.kind) {
    case PK::Link:
      out.kind = NK::Atom;
      return out;
    case PK::Inverse:
      return normalize(p.children[0], !inverted);
    case PK::NegatedSet:
      if (p.negated.size() == 1) {
        out.kind = NK::Atom;  // !a counts as a plain letter inside expressions
      } else {
        out.kind = NK::NegatedSet;
        out.negated_size = static_cast<int>(p.negated.size());
      }
      return out;
    case PK::Sequence: {
      NormalPath lhs = normalize(p.children[0], inverted);
      NormalPath rhs = normalize(p.children[1], inverted);
      out.kind = NK::Seq;
      auto splice = [&](NormalPath&& part) {
        if (part.kind == NK::Seq) {
          for (NormalPath& c : part.children) out.children.push_back(std::move(c));
        } else {
          out.children.push_back(std::move(part));
        }
      };
      if (inverted) {
        splice(std::move(rhs));
        splice(std::move(lhs));
      } else {
        splice(std::move(lhs));
        splice(std::move(rhs));
      }
      return out;
    }
    case PK::Alternative: {
      NormalPath lhs = normalize(p.children[0], inverted);
      NormalPath rhs = normalize(p.children[1], inverted);
      out.kind = NK::Alt;
      auto splice = [&](NormalPath&& part) {
        if (part.kind == NK::Alt) {
          for (NormalPath& c : part.children) out.children.push_back(std::move(c));
        } else {
          out.children.push_back(std::move(part));
        }
      };
      splice(std::move(lhs));
      splice(std::move(rhs));
      return out;
    }
    case PK::ZeroOrMore:
    case PK::OneOrMore:
    case PK::ZeroOrOne:
      out.kind = p.kind == PK::ZeroOrMore ? NK::Star
                 : p.kind == PK::OneOrMore ? NK::Plus
                                           : NK::Opt;
      out.children.push_back(normalize(p.children[0], inverted));
      return out;
  }
  return out;
}

using NK = NormalPath::Kind;

bool is_atom(const NormalPath& n) { return n.kind == NK::Atom; }

bool is_unary_atom(const NormalPath& n, NK kind) {
  return n.kind == kind && is_atom(n.children[0]);
}

/// Alternation whose members are all atoms; yields the arity.
std::optional<int> alt_of_atoms(const NormalPath& n) {
  if (n.kind != NK::Alt) return std::nullopt;
  for (const NormalPath& c : n.children) {
    if (!is_atom(c)) return std::nullopt;
  }
  return static_cast<int>(n.children.size());
}

bool all_atoms(const std::vector<NormalPath>& children) {
  return std::all_of(children.begin(), children.end(), [](const NormalPath& c) { return is_atom(c); });
}

}  // namespace

NormalPath normalize_path(const PropertyPath& path) { return normalize(path, false); }

PathClass classify_path(const PropertyPath& path) {
  // the two atomic forms the table excludes, plus a parenthesized plain IRI
  if (path.kind == PropertyPath::Kind::Link) {
    return PathClass{PathTemplate::Link, std::nullopt, false};
  }
  if (path.kind == PropertyPath::Kind::Inverse &&
      path.children[0].kind == PropertyPath::Kind::Link) {
    return PathClass{PathTemplate::BareInverse, std::nullopt, false};
  }
  if (path.kind == PropertyPath::Kind::NegatedSet && path.negated.size() == 1) {
    return PathClass{PathTemplate::BareNegation, std::nullopt, false};
  }

  NormalPath n = normalize_path(path);
  auto result = [](PathTemplate t, std::optional<int> k = std::nullopt) {
    return PathClass{t, k, true};
  };

  // (a1|...|ak)*
  if (n.kind == NK::Star) {
    if (std::optional<int> k = alt_of_atoms(n.children[0])) return result(PathTemplate::AltStar, k);
  }
  // a*
  if (is_unary_atom(n, NK::Star)) return result(PathTemplate::Star);
  // a1/.../ak
  if (n.kind == NK::Seq && all_atoms(n.children)) {
    return result(PathTemplate::Seq, static_cast<int>(n.children.size()));
  }
  // a*/b and b/a*
  if (n.kind == NK::Seq && n.children.size() == 2) {
    const NormalPath& a = n.children[0];
    const NormalPath& b = n.children[1];
    if ((is_unary_atom(a, NK::Star) && is_atom(b)) || (is_atom(a) && is_unary_atom(b, NK::Star))) {
      return result(PathTemplate::StarSeq);
    }
  }
  // a1|...|ak
  if (std::optional<int> k = alt_of_atoms(n)) return result(PathTemplate::Alt, k);
  // a+
  if (is_unary_atom(n, NK::Plus)) return result(PathTemplate::Plus);
  // a1?/.../ak?  (a lone a? is the k=1 case)
  if (is_unary_atom(n, NK::Opt)) return result(PathTemplate::OptSeq, 1);
  if (n.kind == NK::Seq && std::all_of(n.children.begin(), n.children.end(), [](const NormalPath& c) {
        return is_unary_atom(c, NK::Opt);
      })) {
    return result(PathTemplate::OptSeq, static_cast<int>(n.children.size()));
  }
  // a(b1|...|bk) and its mirror
  if (n.kind == NK::Seq && n.children.size() == 2) {
    const NormalPath& a = n.children[0];
    const NormalPath& b = n.children[1];
    if (is_atom(a)) {
      if (std::optional<int> k = alt_of_atoms(b)) return result(PathTemplate::SeqAlt, k);
    }
    if (is_atom(b)) {
      if (std::optional<int> k = alt_of_atoms(a)) return result(PathTemplate::SeqAlt, k);
    }
  }
  // a1/a2?/.../ak? and its mirror; k counts the optional tail
  if (n.kind == NK::Seq && n.children.size() >= 2) {
    auto opt_tail = [&](bool mirrored) -> bool {
      std::size_t first = mirrored ? n.children.size() - 1 : 0;
      if (!is_atom(n.children[first])) return false;
      for (std::size_t i = 0; i < n.children.size(); ++i) {
        if (i == first) continue;
        if (!is_unary_atom(n.children[i], NK::Opt)) return false;
      }
      return true;
    };
    if (opt_tail(false) || opt_tail(true)) {
      return result(PathTemplate::SeqOptTail, static_cast<int>(n.children.size()) - 1);
    }
  }
  // (a/b*)|c with mirrors on both levels
  if (n.kind == NK::Alt && n.children.size() == 2) {
    auto star_seq = [](const NormalPath& x) {
      if (x.kind != NK::Seq || x.children.size() != 2) return false;
      const NormalPath& a = x.children[0];
      const NormalPath& b = x.children[1];
      return (is_atom(a) && is_unary_atom(b, NK::Star)) ||
             (is_unary_atom(a, NK::Star) && is_atom(b));
    };
    const NormalPath& a = n.children[0];
    const NormalPath& b = n.children[1];
    if ((star_seq(a) && is_atom(b)) || (is_atom(a) && star_seq(b))) {
      return result(PathTemplate::SeqStarOrAlt);
    }
  }
  // a*/b? and mirror
  if (n.kind == NK::Seq && n.children.size() == 2) {
    const NormalPath& a = n.children[0];
    const NormalPath& b = n.children[1];
    if ((is_unary_atom(a, NK::Star) && is_unary_atom(b, NK::Opt)) ||
        (is_unary_atom(a, NK::Opt) && is_unary_atom(b, NK::Star))) {
      return result(PathTemplate::StarOptPair);
    }
  }
  // a/b/c* and mirror
  if (n.kind == NK::Seq && n.children.size() == 3) {
    const NormalPath& a = n.children[0];
    const NormalPath& c = n.children[2];
    if (is_atom(n.children[1])) {
      if ((is_atom(a) && is_unary_atom(c, NK::Star)) ||
          (is_unary_atom(a, NK::Star) && is_atom(c))) {
        return result(PathTemplate::SeqSeqStar);
      }
    }
  }
  // !(a|b)
  if (n.kind == NK::NegatedSet) return result(PathTemplate::NegatedAlt, n.negated_size);
  // (a1|...|ak)+
  if (n.kind == NK::Plus) {
    if (std::optional<int> k = alt_of_atoms(n.children[0])) return result(PathTemplate::AltPlus, k);
  }
  // (a1|...|ak)(a1|...|ak): the same alternation twice
  if (n.kind == NK::Seq && n.children.size() == 2) {
    std::optional<int> ka = alt_of_atoms(n.children[0]);
    std::optional<int> kb = alt_of_atoms(n.children[1]);
    if (ka && kb && *ka == *kb) return result(PathTemplate::AltAltSeq, ka);
  }
  // two-member alternation pairs
  if (n.kind == NK::Alt && n.children.size() == 2) {
    const NormalPath& a = n.children[0];
    const NormalPath& b = n.children[1];
    auto pair_is = [&](NK mod) {
      return (is_unary_atom(a, mod) && is_atom(b)) || (is_atom(a) && is_unary_atom(b, mod));
    };
    if (pair_is(NK::Opt)) return result(PathTemplate::OptAltPair);
    if (pair_is(NK::Star)) return result(PathTemplate::StarAltPair);
    if (pair_is(NK::Plus)) return result(PathTemplate::PlusAltPair);
    if (is_unary_atom(a, NK::Plus) && is_unary_atom(b, NK::Plus)) {
      return result(PathTemplate::PlusPlusPair);
    }
  }
  // (a|b)?
  if (n.kind == NK::Opt) {
    if (std::optional<int> k = alt_of_atoms(n.children[0])) return result(PathTemplate::AltOpt, k);
  }
  // (a/b)*
  if (n.kind == NK::Star) {
    const NormalPath& inner = n.children[0];
    if (inner.kind == NK::Seq && inner.children.size() == 2 && all_atoms(inner.children)) {
      return result(PathTemplate::SeqUnderStar);
    }
  }
  return result(PathTemplate::Other);
}

}  // namespace sparqlog

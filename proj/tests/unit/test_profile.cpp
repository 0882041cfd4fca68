#include "doctest.h"

#include "helpers.hpp"
#include "sparqlog/profile.hpp"

using namespace sparqlog;
using sparqlog::test::parse_ok;

namespace {

const char* kWikiDataQuery =
    "PREFIX wdt: <http://www.wikidata.org/prop/direct/> "
    "PREFIX wd: <http://www.wikidata.org/entity/> "
    "PREFIX rdfs: <http://www.w3.org/2000/01/rdf-schema#> "
    "SELECT ?label ?coord ?subj WHERE "
    "{ ?subj wdt:P31/wdt:P279* wd:Q839954 . "
    "  ?subj wdt:P625 ?coord . "
    "  ?subj rdfs:label ?label filter(lang(?label)=\"en\") }";

}  // namespace

TEST_CASE("keyword flags for the wikidata query") {
  ShallowProfile p = shallow_profile(parse_ok(kWikiDataQuery));
  CHECK(p.keyword(Keyword::Select));
  CHECK(p.keyword(Keyword::Filter));
  CHECK(p.keyword(Keyword::And));
  CHECK_FALSE(p.keyword(Keyword::Opt));
  CHECK_FALSE(p.keyword(Keyword::Union));
  CHECK_FALSE(p.keyword(Keyword::Distinct));
  CHECK(p.triple_count == 3);
  CHECK(p.path_pattern_count == 1);
  CHECK(p.operator_set.other);  // property path
  CHECK(p.projection == Projection::No);  // all in-scope vars are selected
}

TEST_CASE("ground ask has only the Ask flag") {
  ShallowProfile p = shallow_profile(parse_ok("ASK WHERE { <http://e/s> <http://e/p> <http://e/o> }"));
  for (std::size_t i = 0; i < kKeywordCount; ++i) {
    Keyword k = static_cast<Keyword>(i);
    if (k == Keyword::Ask) {
      CHECK(p.keyword(k));
    } else {
      CHECK_FALSE(p.keyword(k));
    }
  }
  CHECK(p.projection == Projection::No);
}

TEST_CASE("aggregation keywords") {
  ShallowProfile p = shallow_profile(
      parse_ok("SELECT (COUNT(?x) AS ?n) WHERE {?x <http://e/p> <http://e/o>} GROUP BY ?x"));
  CHECK(p.keyword(Keyword::Select));
  CHECK(p.keyword(Keyword::Count));
  CHECK(p.keyword(Keyword::GroupBy));
  CHECK_FALSE(p.keyword(Keyword::Sum));
}

TEST_CASE("keywords inside subqueries count once") {
  ShallowProfile p = shallow_profile(parse_ok(
      "ASK WHERE { { SELECT DISTINCT ?s WHERE { ?s ?p ?o OPTIONAL {?s <http://e/q> ?t} } } }"));
  CHECK(p.keyword(Keyword::Ask));
  CHECK(p.keyword(Keyword::Select));
  CHECK(p.keyword(Keyword::Distinct));
  CHECK(p.keyword(Keyword::Opt));
  CHECK(p.subquery_count == 1);
}

TEST_CASE("triple counts cover all body containers but not construct templates") {
  CHECK(triple_count(parse_ok("SELECT * WHERE { {?a <http://e/p> ?b} UNION "
                              "{?a <http://e/q> ?b . ?b <http://e/r> ?c} }")) == 3);
  CHECK(triple_count(parse_ok("DESCRIBE <http://e/x>")) == 0);
  CHECK(triple_count(parse_ok("CONSTRUCT { ?s <http://e/p> ?o } WHERE { ?s <http://e/q> ?o }")) == 1);
  CHECK(triple_count(parse_ok("SELECT * WHERE { ?a ?b ?c GRAPH ?g { ?d ?e ?f } "
                              "{ SELECT * WHERE { ?x ?y ?z } } }")) == 3);
}

TEST_CASE("operator sets") {
  OperatorSet joined = operator_set(
      parse_ok("SELECT * WHERE { ?a <http://e/p> ?b . ?b <http://e/q> ?c FILTER(?c > 1) }"));
  CHECK_FALSE(joined.other);
  CHECK(joined.mask == (OperatorSet::A | OperatorSet::F));
  CHECK(operator_set_label(joined) == "A,F");

  OperatorSet none = operator_set(parse_ok("SELECT * WHERE { ?s ?p ?o }"));
  CHECK_FALSE(none.other);
  CHECK(none.mask == 0);
  CHECK(operator_set_label(none) == "none");

  OperatorSet path = operator_set(parse_ok("SELECT * WHERE { ?s <http://e/p>+ ?o }"));
  CHECK(path.other);

  OperatorSet exists = operator_set(
      parse_ok("SELECT * WHERE { ?s ?p ?o FILTER NOT EXISTS { ?s <http://e/x> ?o } }"));
  CHECK(exists.other);

  OperatorSet all_four = operator_set(parse_ok(
      "SELECT * WHERE { { ?a <http://e/p> ?b . ?c <http://e/q> ?d FILTER(?b = ?d) "
      "OPTIONAL { ?a <http://e/r> ?e } } UNION { ?a <http://e/s> ?f } }"));
  CHECK_FALSE(all_four.other);
  CHECK(all_four.mask == (OperatorSet::A | OperatorSet::F | OperatorSet::O | OperatorSet::U));

  OperatorSet graph_only = operator_set(parse_ok("ASK WHERE { GRAPH ?g { ?s ?p ?o } }"));
  CHECK_FALSE(graph_only.other);
  CHECK(graph_only.mask == OperatorSet::G);
}

TEST_CASE("projection status per the in-scope variable test") {
  CHECK(projection_status(parse_ok("ASK WHERE { <http://e/s> <http://e/p> <http://e/o> }")) ==
        Projection::No);
  CHECK(projection_status(parse_ok("ASK WHERE { ?s <http://e/p> ?o }")) == Projection::Yes);
  CHECK(projection_status(parse_ok("SELECT ?x WHERE {?x <http://e/p> ?y}")) == Projection::Yes);
  CHECK(projection_status(parse_ok("SELECT ?x ?y WHERE {?x <http://e/p> ?y}")) == Projection::No);
  CHECK(projection_status(parse_ok("SELECT * WHERE {?x <http://e/p> ?y}")) == Projection::No);
  CHECK(projection_status(
            parse_ok("SELECT ?x WHERE {?x <http://e/p> ?y . BIND(?y+1 AS ?z)}")) ==
        Projection::Unknown);
  // a Bind inside a subquery is shielded by the subquery projection
  CHECK(projection_status(parse_ok(
            "SELECT ?x WHERE { ?x <http://e/p> ?y { SELECT ?q WHERE { ?q <http://e/r> ?w . "
            "BIND(?w AS ?v) } } }")) == Projection::Yes);
}

TEST_CASE("select and ask queries dominate projection counting") {
  // corpus-level sanity: projection only reported for select/ask
  Query construct = parse_ok("CONSTRUCT { ?s <http://e/p> ?o } WHERE { ?s <http://e/q> ?o }");
  CHECK(projection_status(construct) == Projection::No);
}

TEST_CASE("keyword flags are monotone under adding a union branch") {
  Query small = parse_ok("SELECT * WHERE { ?a <http://e/p> ?b OPTIONAL { ?a <http://e/q> ?c } }");
  Query big = parse_ok(
      "SELECT * WHERE { { ?a <http://e/p> ?b OPTIONAL { ?a <http://e/q> ?c } } UNION "
      "{ ?a <http://e/r> ?d } }");
  ShallowProfile ps = shallow_profile(small);
  ShallowProfile pb = shallow_profile(big);
  for (std::size_t i = 0; i < kKeywordCount; ++i) {
    if (ps.keywords[i]) CHECK(pb.keywords[i]);
  }
}

TEST_CASE("collected paths match the path pattern count") {
  Query q = parse_ok(
      "SELECT * WHERE { ?s <http://e/a>/<http://e/b> ?o . ?s <http://e/c>* ?t "
      "{ SELECT * WHERE { ?x ^<http://e/d> ?y } } }");
  ShallowProfile p = shallow_profile(q);
  CHECK(p.path_pattern_count == 3);
  CHECK(collect_paths(q).size() == 3);
}

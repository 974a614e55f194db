#include <doctest.h>

#include <random>

#include "aligndash/alignment_io.hpp"
#include "aligndash/errors.hpp"
#include "support.hpp"

using namespace aligndash;
using testsupport::cell;

namespace {

const std::string kHead =
    "<?xml version='1.0' encoding='utf-8'?>\n"
    "<rdf:RDF xmlns='http://knowledgeweb.semanticweb.org/heterogeneity/alignment'\n"
    "         xmlns:rdf='http://www.w3.org/1999/02/22-rdf-syntax-ns#'>\n"
    "<Alignment>\n";
const std::string kTail = "</Alignment>\n</rdf:RDF>\n";

std::string doc(const std::string& body) { return kHead + body + kTail; }

ParseErrorKind error_kind(const std::string& text) {
    try {
        parse_alignment(text);
    } catch (const ParseError& e) {
        return e.kind();
    }
    FAIL("expected a ParseError");
    return ParseErrorKind::XmlSyntax;
}

}  // namespace

TEST_CASE("relation tokens") {
    CHECK(Relation::parse("=").kind() == RelationKind::Equivalence);
    CHECK(Relation::parse(">").kind() == RelationKind::Subsumes);
    CHECK(Relation::parse("<").kind() == RelationKind::SubsumedBy);
    CHECK(Relation::parse("%").kind() == RelationKind::Incompatible);
    const Relation other = Relation::parse("HasInstance");
    CHECK(other.kind() == RelationKind::Other);
    CHECK(other.raw() == "HasInstance");
    CHECK(Relation{}.raw() == "=");
}

TEST_CASE("alignment dedup keeps the highest confidence") {
    Alignment a;
    CHECK(a.add(cell("urn:a", "urn:b", "=", 0.4)));
    CHECK_FALSE(a.add(cell("urn:a", "urn:b", "=", 0.9)));
    CHECK_FALSE(a.add(cell("urn:a", "urn:b", "=", 0.2)));
    CHECK(a.add(cell("urn:a", "urn:b", ">", 0.1)));
    REQUIRE(a.size() == 2);
    CHECK(a.cells()[0].confidence == 0.9);

    // Ties keep the earlier cell.
    Alignment t;
    auto first = cell("urn:a", "urn:b", "foo", 0.5);
    t.add(first);
    t.add(cell("urn:a", "urn:b", "bar", 0.5));
    CHECK(t.cells()[0].relation.raw() == "foo");
}

TEST_CASE("alignment equality ignores cell order") {
    auto a = testsupport::make_alignment({cell("urn:a", "urn:b"), cell("urn:c", "urn:d")});
    auto b = testsupport::make_alignment({cell("urn:c", "urn:d"), cell("urn:a", "urn:b")});
    CHECK(a == b);
    b.onto1 = "urn:o";
    CHECK_FALSE(a == b);
}

TEST_CASE("parse a typical alignment") {
    const std::string text = doc(R"(
  <xml>yes</xml><level>0</level><type>11</type>
  <onto1><Ontology rdf:about="http://a.org/onto"><location>file:a.owl</location></Ontology></onto1>
  <onto2>http://b.org/onto</onto2>
  <map><Cell>
    <entity1 rdf:resource="http://a.org/onto#X"/>
    <entity2 rdf:resource="http://b.org/onto#Y"/>
    <relation> = </relation>
    <measure rdf:datatype="http://www.w3.org/2001/XMLSchema#float">0.75</measure>
  </Cell></map>
  <map><Cell>
    <entity1 rdf:resource="http://a.org/onto#P"/>
    <entity2 rdf:resource="http://b.org/onto#Q"/>
  </Cell></map>
)");
    const Alignment a = parse_alignment(text);
    CHECK(a.onto1 == "http://a.org/onto");
    CHECK(a.onto2 == "http://b.org/onto");
    CHECK(a.type == "11");
    REQUIRE(a.size() == 2);
    CHECK(a.cells()[0].source == "http://a.org/onto#X");
    CHECK(a.cells()[0].confidence == 0.75);
    // Defaults: equivalence, confidence 1.
    CHECK(a.cells()[1].relation.kind() == RelationKind::Equivalence);
    CHECK(a.cells()[1].confidence == 1.0);
}

TEST_CASE("extensions and relative entity references") {
    const std::string text = kHead + R"(
  <map><Cell xml:base="http://a.org/onto">
    <entity1 rdf:resource="#X"/>
    <entity2 rdf:resource="http://b.org/onto#Y"/>
    <relation>HasInstance</relation>
    <note xmlns="urn:ext">checked &amp; approved</note>
    <source xmlns="urn:ext" rdf:resource="http://people.org/ann"/>
  </Cell></map>
)" + kTail;
    const Alignment a = parse_alignment(text);
    REQUIRE(a.size() == 1);
    const auto& c = a.cells()[0];
    CHECK(c.source == "http://a.org/onto#X");
    CHECK(c.relation.raw() == "HasInstance");
    REQUIRE(c.extensions.size() == 2);
    CHECK(c.extensions[0] == std::pair<std::string, std::string>{"{urn:ext}note", "checked & approved"});
    CHECK(c.extensions[1].second == "http://people.org/ann");
}

TEST_CASE("parse errors carry kind and position") {
    CHECK(error_kind(doc("<map><Cell><entity1 rdf:resource='urn:a'/></Cell></map>")) == ParseErrorKind::MissingEntity);
    CHECK(error_kind(doc("<map><Cell><entity1/><entity2 rdf:resource='urn:b'/></Cell></map>")) ==
          ParseErrorKind::MissingEntity);
    CHECK(error_kind(doc("<map><Cell><entity1 rdf:resource='#rel'/><entity2 rdf:resource='urn:b'/></Cell></map>")) ==
          ParseErrorKind::MissingEntity);
    CHECK(error_kind(doc("<map><Cell><entity1 rdf:resource='urn:a'/><entity2 rdf:resource='urn:b'/>"
                         "<measure>high</measure></Cell></map>")) == ParseErrorKind::BadMeasure);
    CHECK(error_kind(doc("<map><Cell><entity1 rdf:resource='urn:a'/><entity2 rdf:resource='urn:b'/>"
                         "<measure>nan</measure></Cell></map>")) == ParseErrorKind::BadMeasure);
    CHECK(error_kind(kHead + "<map><Cell>") == ParseErrorKind::XmlSyntax);
    CHECK(error_kind("<?xml version='1.0' encoding='utf-8'?><a>\xff\xfe</a>") == ParseErrorKind::XmlSyntax);

    try {
        parse_alignment(doc("\n\n<map><Cell><entity1 rdf:resource='urn:a'/><entity2 rdf:resource='urn:b'/>"
                            "<measure>x</measure></Cell></map>"));
        FAIL("expected a ParseError");
    } catch (const ParseError& e) {
        CHECK(e.position().line == 7);
        CHECK(std::string(e.what()).find("line 7") != std::string::npos);
    }
}

TEST_CASE("out-of-range confidence is kept with a warning") {
    Diagnostics warnings;
    const Alignment a = parse_alignment(
        doc("<map><Cell><entity1 rdf:resource='urn:a'/><entity2 rdf:resource='urn:b'/>"
            "<measure>1.5</measure></Cell></map>"),
        &warnings);
    CHECK(a.cells()[0].confidence == 1.5);
    REQUIRE(warnings.size() == 1);
    CHECK(warnings[0].message.find("outside [0,1]") != std::string::npos);
}

TEST_CASE("serialize then parse is the identity") {
    Alignment a;
    a.onto1 = "http://a.org/onto";
    a.onto2 = "http://b.org/o?x=1&y=<2>";
    a.type = "?*";
    auto c = cell("http://a.org/onto#X", "http://b.org/onto#\"Y\"", "skos:exactMatch", 0.1 + 0.2);
    c.extensions = {{"{urn:ext}note", "a < b & c"}, {"plain", "no namespace"}};
    a.add(c);
    a.add(cell("http://a.org/onto#X", "http://b.org/onto#Z", "%", 1e-9));
    const std::string text = serialize_alignment(a);
    CHECK(parse_alignment(text) == a);
    CHECK(serialize_alignment(parse_alignment(text)) == text);
}

TEST_CASE("property: random round trips with duplicates") {
    std::mt19937_64 rng(7);
    for (int i = 0; i < 100; ++i) {
        auto raw = testsupport::random_cells(rng, 30);
        for (auto& c : raw) {
            if (rng() % 3 == 0) c.extensions.emplace_back("{urn:ext}tag", testsupport::random_text(rng));
        }
        const Alignment parsed = parse_alignment(testsupport::write_raw_alignment(raw, "urn:l", "urn:r"));
        const Alignment expected = testsupport::make_alignment(raw);
        CHECK(parsed.size() == testsupport::dedup(raw).size());
        // Confidence written with %.17g is exact, so the deduplicated sets agree.
        for (const auto& c : expected.cells()) {
            const Correspondence* p = parsed.find(key_of(c));
            REQUIRE(p != nullptr);
            CHECK(p->confidence == c.confidence);
        }
        CHECK(parse_alignment(serialize_alignment(parsed)) == parsed);
    }
}

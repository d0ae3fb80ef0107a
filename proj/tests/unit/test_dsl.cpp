#include "causanet/dsl.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "causanet/puzzles.hpp"
#include "causanet/sim.hpp"
#include "doctest.h"
#include "test_nets.hpp"

using namespace causanet;

namespace {

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

const char* kJobMarketSource = R"(net job_market
  place demands tokens=3
  place offer tokens=1
  place interview
  place hired
  trans apply in demands,offer out interview
  trans hire in interview out offer,hired
end
)";

}  // namespace

TEST_CASE("parsing the job market source reproduces the quoted markings") {
  ParseResult result = parse_document(kJobMarketSource);
  REQUIRE(result.ok());
  REQUIRE(result.document.nets.size() == 1);
  const NetDef& net = result.document.nets[0];
  CHECK(net == causanet::testing::job_market());

  SimTrace trace = run(net, RunConfig{10, 100, 1, GatePolicy::centroid});
  REQUIRE(trace.events.size() >= 2);
  CHECK(trace.initial == Marking({3, 1, 0, 0}));
  CHECK(trace.events[0].post == Marking({2, 0, 1, 0}));
  CHECK(trace.events[1].post == Marking({2, 1, 0, 1}));
}

TEST_CASE("empty input parses to an empty document") {
  ParseResult result = parse_document("");
  CHECK(result.ok());
  CHECK(result.document.order.empty());
  CHECK(parse_document("  \n# only a comment\n\n").ok());
}

TEST_CASE("dangling place references carry a position") {
  const char* source =
      "net broken\n"
      "  place p2\n"
      "  trans t1 in p9:1 out p2:1\n"
      "end\n";
  ParseResult result = parse_document(source);
  REQUIRE_FALSE(result.ok());
  REQUIRE(result.diagnostics.size() == 1);
  CHECK(result.diagnostics[0].line == 3);
  CHECK(result.diagnostics[0].message.find("p9") != std::string::npos);
}

TEST_CASE("duplicate identifiers are diagnosed") {
  CHECK_FALSE(parse_document("net a\nend\nnet a\nend\n").ok());
  CHECK_FALSE(
      parse_document("net a\n  place p\n  place p\nend\n").ok());
  CHECK_FALSE(
      parse_document("net a\n  place p\n  trans p out p:1\nend\n").ok());
  CHECK_FALSE(parse_document("label l crisp(0.5)\nlabel l crisp(0.4)\n").ok());
}

TEST_CASE("malformed input is diagnosed, never silently dropped") {
  ParseResult bad_keyword = parse_document("florb x\n");
  REQUIRE_FALSE(bad_keyword.ok());
  CHECK(bad_keyword.diagnostics[0].line == 1);

  CHECK_FALSE(parse_document("net a\n  trans t delay=warp(3)\nend\n").ok());
  CHECK_FALSE(parse_document("net a\n").ok());  // missing end
  CHECK_FALSE(parse_document("end\n").ok());
  CHECK_FALSE(parse_document("chain c\n  edge X -> Y adverb \"unterminated\n"
                             "end\n")
                  .ok());
  CHECK_FALSE(parse_document("net a\n  place p tokens=abc\nend\n").ok());
  // fuzzy gates require a fixed delay
  CHECK_FALSE(parse_document("net a\n  place p tokens=1\n"
                             "  trans t in p delay=exp(1) fuzzy=possible\n"
                             "end\n")
                  .ok());
  CHECK_FALSE(parse_document("net a\n  place p tokens=1\n"
                             "  trans t in p fuzzy=no_such_label\nend\n")
                  .ok());
}

TEST_CASE("labels resolve from the document and from the builtin lexicon") {
  const char* source =
      "net gated\n"
      "  place p tokens=1\n"
      "  place q\n"
      "  trans go in p out q delay=det(2) fuzzy=mine\n"
      "  trans alt in p out q fuzzy=highly_probable\n"
      "end\n"
      "label mine tri(0.2,0.4,0.6)\n";  // defined after use
  ParseResult result = parse_document(source);
  REQUIRE(result.ok());
  const NetDef& net = result.document.nets[0];
  REQUIRE(net.transitions[0].timing.gate.has_value());
  CHECK(net.transitions[0].timing.gate->name() == "mine");
  CHECK(net.transitions[0].timing.delay == 2.0);
  REQUIRE(net.transitions[1].timing.gate.has_value());
  CHECK(net.transitions[1].timing.gate->centroid() == doctest::Approx(0.8));
}

TEST_CASE("round trip over every shipped fixture") {
  namespace fs = std::filesystem;
  fs::path dir = causanet::testing::scenarios_dir();
  std::size_t checked = 0;
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.path().extension() == ".causanet") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  for (const auto& path : files) {
    ParseResult first = parse_document(slurp(path));
    REQUIRE_MESSAGE(first.ok(), path.string());
    std::string canonical = serialize_document(first.document);
    ParseResult second = parse_document(canonical);
    REQUIRE_MESSAGE(second.ok(), path.string());
    CHECK_MESSAGE(first.document == second.document, path.string());
    // canonical text is a fixed point of parse-then-serialize
    CHECK(serialize_document(second.document) == canonical);
    ++checked;
  }
  CHECK(checked >= 9);
}

TEST_CASE("canonical form omits defaults") {
  ParseResult result = parse_document(
      "net n\n  place p tokens=1\n  place q\n"
      "  trans t in p:1 out q:1 delay=imm weight=1\nend\n");
  REQUIRE(result.ok());
  std::string text = serialize_document(result.document);
  CHECK(text.find("trans t in p out q\n") != std::string::npos);
  CHECK(text.find(":1") == std::string::npos);
  CHECK(text.find("delay=imm") == std::string::npos);
  CHECK(text.find("weight=") == std::string::npos);
  CHECK(text.find("place q\n") != std::string::npos);

  ParseResult weighted = parse_document(
      "net n\n  place p tokens=2\n  trans t in p:2 delay=det(1.5) "
      "weight=0.25\nend\n");
  REQUIRE(weighted.ok());
  std::string wtext = serialize_document(weighted.document);
  CHECK(wtext.find("in p:2") != std::string::npos);
  CHECK(wtext.find("delay=det(1.5)") != std::string::npos);
  CHECK(wtext.find("weight=0.25") != std::string::npos);
}

TEST_CASE("labels serialize verbatim") {
  ParseResult result = parse_document("label g crisp(0.3)\n");
  REQUIRE(result.ok());
  CHECK(serialize_document(result.document) == "label g crisp(0.3)\n");
}

TEST_CASE("chain and fcm and neuron blocks round trip") {
  const char* source =
      "chain beliefs\n"
      "  edge X -> Y adverb \"very often\" mean=0.8 std=0.05\n"
      "  edge X -> Y adverb \"sometimes\" mean=0.5 std=0.2\n"
      "  edge Y -> Z adverb \"rarely\" mean=0.2 std=0.1\n"
      "end\n"
      "fcm economy\n"
      "  concept sales init=0.25\n"
      "  concept orders\n"
      "  edge sales -> orders w=0.5 delay=2\n"
      "  edge orders -> sales w=-0.5\n"
      "end\n"
      "neuron overdetermination\n"
      "  node a shaded\n"
      "  node b\n"
      "  stim a -> b\n"
      "  inhib a -> b\n"
      "end\n";
  ParseResult first = parse_document(source);
  REQUIRE(first.ok());
  REQUIRE(first.document.chains.size() == 1);
  CHECK(first.document.chains[0].edges()[0].strengths.size() == 2);
  CHECK(first.document.chains[0].edges()[0].strengths[0].adverb ==
        "very often");
  REQUIRE(first.document.fcms.size() == 1);
  CHECK(first.document.fcms[0].edges[0].delay == 2);
  REQUIRE(first.document.neurons.size() == 1);

  std::string canonical = serialize_document(first.document);
  ParseResult second = parse_document(canonical);
  REQUIRE(second.ok());
  CHECK(first.document == second.document);
}

TEST_CASE("chain blocks reject cycles with a position") {
  ParseResult result = parse_document(
      "chain c\n"
      "  edge X -> Y adverb \"w\" mean=0.5 std=0.1\n"
      "  edge Y -> X adverb \"w\" mean=0.5 std=0.1\n"
      "end\n");
  REQUIRE_FALSE(result.ok());
  CHECK(result.diagnostics[0].line == 3);
}

TEST_CASE("neuron blocks reject cycles") {
  CHECK_FALSE(parse_document("neuron n\n  node a shaded\n  node b\n"
                             "  stim a -> b\n  stim b -> a\nend\n")
                  .ok());
}

TEST_CASE("fcm weights and delays are range-checked") {
  CHECK_FALSE(parse_document("fcm m\n  concept a\n  concept b\n"
                             "  edge a -> b w=1.5\nend\n")
                  .ok());
  CHECK_FALSE(parse_document("fcm m\n  concept a\n  concept b\n"
                             "  edge a -> b w=0.5 delay=-1\nend\n")
                  .ok());
  CHECK_FALSE(parse_document("fcm m\n  concept a init=2\nend\n").ok());
}

TEST_CASE("dot export of nets") {
  NetDef empty;
  empty.name = "empty";
  std::string dot = export_dot(empty);
  CHECK(dot.find("digraph") == 0);
  CHECK(dot.find("shape=circle") == std::string::npos);
  CHECK(dot.find("shape=box") == std::string::npos);

  std::string fig2 = export_dot(causanet::testing::fig2_left());
  CHECK(std::count(fig2.begin(), fig2.end(), '\n') > 8);
  std::size_t circles = 0, boxes = 0;
  for (std::size_t pos = 0; (pos = fig2.find("shape=circle", pos)) !=
                            std::string::npos;
       ++pos) {
    ++circles;
  }
  for (std::size_t pos = 0; (pos = fig2.find("shape=box", pos)) !=
                            std::string::npos;
       ++pos) {
    ++boxes;
  }
  CHECK(circles == 5);
  CHECK(boxes == 3);
  CHECK(fig2.find("label=\"2\"") != std::string::npos);  // the weight-2 arc
  CHECK(export_dot(causanet::testing::fig2_left()) == fig2);  // stable bytes
}

TEST_CASE("dot export styles neuron edges by kind") {
  NeuronDiagram d;
  d.name = "n";
  d.nodes = {{"a", true}, {"b", false}, {"c", false}};
  d.edges = {{0, 2, NeuronDiagram::EdgeKind::stimulatory},
             {1, 2, NeuronDiagram::EdgeKind::inhibitory}};
  std::string dot = export_dot(d);
  CHECK(dot.find("\"b\" -> \"c\" [arrowhead=odot]") != std::string::npos);
  CHECK(dot.find("\"a\" -> \"c\";") != std::string::npos);
  CHECK(dot.find("style=filled") != std::string::npos);  // shaded start
}

TEST_CASE("dot export of reachability graphs labels nodes with markings") {
  NetDef net = causanet::testing::fig2_left();
  ReachabilityGraph g = reachability_graph(net, 100, 100);
  std::string dot = export_dot(net, g);
  CHECK(dot.find("(2,2,0,0,0)") != std::string::npos);
  CHECK(dot.find("label=\"t1\"") != std::string::npos);
}

TEST_CASE("dot export of chain graphs shows fused strengths") {
  ChainGraph g("g");
  g.add_edge("X", "Y", {"often", 0.5, 0.1});
  std::string dot = export_dot(g);
  CHECK(dot.find("\"X\" -> \"Y\"") != std::string::npos);
  CHECK(dot.find("m=0.5") != std::string::npos);
}

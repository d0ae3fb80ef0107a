#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "causanet/analysis.hpp"
#include "causanet/dsl.hpp"
#include "causanet/puzzles.hpp"

namespace py = pybind11;
using namespace causanet;

namespace {

std::size_t transition_id_or_throw(const NetDef& net, const std::string& name) {
  auto t = net.transition_index(name);
  if (!t) throw Error("unknown transition '" + name + "'");
  return *t;
}

TNormKind tnorm_kind(const std::string& name) {
  if (name == "godel") return TNormKind::godel;
  if (name == "product") return TNormKind::product;
  if (name == "lukasiewicz") return TNormKind::lukasiewicz;
  throw Error("unknown t-norm kind '" + name + "'");
}

GatePolicy gate_policy(const std::string& name) {
  if (name == "centroid") return GatePolicy::centroid;
  if (name == "sampled") return GatePolicy::sampled;
  throw Error("unknown policy '" + name + "'");
}

}  // namespace

PYBIND11_MODULE(_causanet, m) {
  m.doc() = "Petri-net simulation and causal-formalism toolkit";
  m.attr("__version__") = "0.1.0";

  py::register_exception<Error>(m, "CausanetError", PyExc_ValueError);

  py::class_<Marking>(m, "Marking")
      .def(py::init<std::vector<int>>())
      .def_readonly("counts", &Marking::counts)
      .def("__eq__", [](const Marking& a, const Marking& b) { return a == b; })
      .def("__len__", &Marking::size)
      .def("__getitem__",
           [](const Marking& m, std::size_t i) {
             if (i >= m.size()) throw py::index_error();
             return m[i];
           })
      .def("__repr__", &Marking::to_string);
  py::implicitly_convertible<py::list, Marking>();

  py::class_<NetDef>(m, "NetDef")
      .def_readonly("name", &NetDef::name)
      .def_readonly("places", &NetDef::places)
      .def_property_readonly("transitions",
                             [](const NetDef& net) {
                               std::vector<std::string> names;
                               for (const auto& t : net.transitions) {
                                 names.push_back(t.name);
                               }
                               return names;
                             })
      .def("initial_marking", &NetDef::initial_marking)
      .def("__repr__", [](const NetDef& net) {
        return "<NetDef " + net.name + ": " +
               std::to_string(net.places.size()) + " places, " +
               std::to_string(net.transitions.size()) + " transitions>";
      });

  py::class_<FuzzyLabel>(m, "FuzzyLabel")
      .def_static("crisp", &FuzzyLabel::crisp)
      .def_static("triangular", &FuzzyLabel::triangular)
      .def_static("trapezoidal", &FuzzyLabel::trapezoidal)
      .def_property_readonly("name", &FuzzyLabel::name)
      .def("membership", &FuzzyLabel::membership)
      .def("centroid", &FuzzyLabel::centroid)
      .def("alpha_cut", &FuzzyLabel::alpha_cut);

  py::class_<SimEvent>(m, "SimEvent")
      .def_readonly("time", &SimEvent::time)
      .def_readonly("transition", &SimEvent::transition)
      .def_readonly("pre", &SimEvent::pre)
      .def_readonly("post", &SimEvent::post);

  py::class_<SimTrace>(m, "SimTrace")
      .def_readonly("net_name", &SimTrace::net_name)
      .def_readonly("seed", &SimTrace::seed)
      .def_readonly("events", &SimTrace::events)
      .def_readonly("initial", &SimTrace::initial)
      .def_readonly("final_marking", &SimTrace::final_marking)
      .def_readonly("transition_names", &SimTrace::transition_names)
      .def_property_readonly("reason",
                             [](const SimTrace& t) {
                               return std::string(to_string(t.reason));
                             })
      .def("transition_name",
           [](const SimTrace& t, const SimEvent& e) {
             return t.transition_names.at(e.transition);
           })
      .def("to_text", [](const SimTrace& t) { return trace_to_text(t); });

  py::class_<ReachabilityGraph>(m, "ReachabilityGraph")
      .def_readonly("nodes", &ReachabilityGraph::nodes)
      .def_readonly("truncated", &ReachabilityGraph::truncated)
      .def_property_readonly("edges", [](const ReachabilityGraph& g) {
        std::vector<std::tuple<std::size_t, std::size_t, std::size_t>> out;
        for (const auto& e : g.edges) out.emplace_back(e.from, e.transition, e.to);
        return out;
      });

  py::class_<AdverbDistribution>(m, "AdverbDistribution")
      .def(py::init([](std::string adverb, double mean, double stddev) {
             return AdverbDistribution{std::move(adverb), mean, stddev};
           }),
           py::arg("adverb"), py::arg("mean"), py::arg("stddev"))
      .def_readonly("adverb", &AdverbDistribution::adverb)
      .def_readonly("mean", &AdverbDistribution::mean)
      .def_readonly("stddev", &AdverbDistribution::stddev);

  py::class_<ChainGraph>(m, "ChainGraph")
      .def(py::init<std::string>(), py::arg("name") = std::string())
      .def_property_readonly("name", &ChainGraph::name)
      .def_property_readonly("nodes", &ChainGraph::nodes)
      .def("add_edge", &ChainGraph::add_edge);

  py::class_<NeuronDiagram>(m, "NeuronDiagram")
      .def(py::init<>())
      .def_readwrite("name", &NeuronDiagram::name)
      .def("add_node",
           [](NeuronDiagram& d, const std::string& name, bool shaded) {
             d.nodes.push_back({name, shaded});
           },
           py::arg("name"), py::arg("shaded") = false)
      .def("add_edge",
           [](NeuronDiagram& d, const std::string& source,
              const std::string& target, bool inhibitory) {
             auto s = d.node_index(source);
             auto t = d.node_index(target);
             if (!s || !t) throw Error("unknown neuron node");
             d.edges.push_back(
                 {*s, *t,
                  inhibitory ? NeuronDiagram::EdgeKind::inhibitory
                             : NeuronDiagram::EdgeKind::stimulatory});
           },
           py::arg("source"), py::arg("target"),
           py::arg("inhibitory") = false);

  py::class_<FuzzyCognitiveMap>(m, "FuzzyCognitiveMap")
      .def(py::init<>())
      .def_readwrite("name", &FuzzyCognitiveMap::name)
      .def("add_concept",
           [](FuzzyCognitiveMap& map, const std::string& name, double init) {
             map.concepts.push_back({name, init});
           },
           py::arg("name"), py::arg("initial") = 0.0)
      .def("add_edge",
           [](FuzzyCognitiveMap& map, const std::string& source,
              const std::string& target, double weight, int delay) {
             auto s = map.concept_index(source);
             auto t = map.concept_index(target);
             if (!s || !t) throw Error("unknown fcm concept");
             map.edges.push_back({*s, *t, weight, delay});
           },
           py::arg("source"), py::arg("target"), py::arg("weight"),
           py::arg("delay") = 0);

  py::class_<FcmRun>(m, "FcmRun")
      .def_readonly("trajectory", &FcmRun::trajectory)
      .def_readonly("fixed_point", &FcmRun::fixed_point);

  py::class_<Document>(m, "Document")
      .def_readonly("nets", &Document::nets)
      .def_property_readonly("labels",
                             [](const Document& d) { return d.labels; })
      .def("net",
           [](const Document& d, const std::string& name) {
             const NetDef* net = d.find_net(name);
             if (!net) throw Error("unknown net '" + name + "'");
             return *net;
           })
      .def("chain",
           [](const Document& d, const std::string& name) {
             const ChainGraph* c = d.find_chain(name);
             if (!c) throw Error("unknown chain '" + name + "'");
             return *c;
           })
      .def("fcm",
           [](const Document& d, const std::string& name) {
             const FuzzyCognitiveMap* f = d.find_fcm(name);
             if (!f) throw Error("unknown fcm '" + name + "'");
             return *f;
           })
      .def("neuron", [](const Document& d, const std::string& name) {
        const NeuronDiagram* n = d.find_neuron(name);
        if (!n) throw Error("unknown neuron '" + name + "'");
        return *n;
      });

  py::class_<Scenario>(m, "Scenario")
      .def_readonly("name", &Scenario::name)
      .def_readonly("net", &Scenario::net)
      .def_property_readonly("expectations", [](const Scenario& s) {
        std::vector<std::string> out;
        for (const auto& e : s.expectations) out.push_back(e.description);
        return out;
      });

  m.def("parse", [](const std::string& text) {
    ParseResult result = parse_document(text);
    if (!result.ok()) {
      std::string msg = "parse failed:";
      for (const auto& d : result.diagnostics) {
        msg += "\n  line " + std::to_string(d.line) + ", col " +
               std::to_string(d.column) + ": " + d.message;
      }
      throw Error(msg);
    }
    return result.document;
  });
  m.def("serialize", &serialize_document);

  m.def("validate", [](const NetDef& net) {
    std::vector<std::string> out;
    for (const auto& v : validate(net).violations) {
      out.push_back(v.subject + ": " + v.detail);
    }
    return out;
  });

  m.def("enabled_transitions", [](const NetDef& net, const Marking& marking) {
    std::vector<std::string> names;
    for (std::size_t t : enabled_transitions(net, marking)) {
      names.push_back(net.transitions[t].name);
    }
    return names;
  });

  m.def("fire", [](const NetDef& net, const Marking& marking,
                   const std::string& transition) {
    return fire(net, marking, transition_id_or_throw(net, transition));
  });

  m.def("classify_transition",
        [](const NetDef& net, const std::string& transition) {
          switch (classify_transition(
              net, transition_id_or_throw(net, transition))) {
            case TransitionKind::source:
              return "source";
            case TransitionKind::sink:
              return "sink";
            default:
              return "internal";
          }
        });

  m.def(
      "run",
      [](const NetDef& net, double horizon, std::size_t max_steps,
         std::uint64_t seed, const std::string& policy) {
        return run(net, RunConfig{horizon, max_steps, seed,
                                  gate_policy(policy)});
      },
      py::arg("net"), py::arg("horizon") = 1e9,
      py::arg("max_steps") = 100000, py::arg("seed") = 0,
      py::arg("policy") = "centroid");

  m.def("trace_to_text", &trace_to_text);

  m.def("reachability_graph", &reachability_graph, py::arg("net"),
        py::arg("max_nodes") = 10000, py::arg("max_tokens_per_place") = 1000);
  m.def("detect_deadlocks", &detect_deadlocks);
  m.def("is_k_bounded", &is_k_bounded);

  m.def("tnorm", [](const std::string& kind, double a, double b) {
    return tnorm(tnorm_kind(kind), a, b);
  });
  m.def("tconorm", [](const std::string& kind, double a, double b) {
    return tconorm(tnorm_kind(kind), a, b);
  });
  m.def("fuzzy_event_probability",
        [](const std::vector<double>& memberships,
           const std::vector<double>& pmf) {
          return fuzzy_event_probability(memberships, pmf);
        });

  m.def("qm_minimize", [](const std::vector<std::string>& names,
                          std::vector<std::uint32_t> minterms) {
    auto implicants = qm_minimize(names.size(), std::move(minterms));
    return implicants_to_string(implicants, names);
  });

  m.def("neuron_evaluate", [](const NeuronDiagram& diagram) {
    std::vector<bool> active = neuron_evaluate(diagram);
    py::dict out;
    for (std::size_t i = 0; i < diagram.nodes.size(); ++i) {
      out[py::str(diagram.nodes[i].name)] = static_cast<bool>(active[i]);
    }
    return out;
  });

  m.def(
      "chain_probability",
      [](const ChainGraph& graph, const std::vector<std::string>& path,
         const std::string& mode, std::uint64_t seed) {
        RandomSource rng(seed);
        return chain_probability(
            graph, path,
            mode == "sampled" ? ChainMode::sampled : ChainMode::fused, &rng);
      },
      py::arg("graph"), py::arg("path"), py::arg("mode") = "fused",
      py::arg("seed") = 0);

  m.def("fuse_adverbs", [](const std::vector<AdverbDistribution>& factors) {
    return fuse_adverbs(factors);
  });

  m.def("fcm_run", &fcm_run, py::arg("map"), py::arg("initial"),
        py::arg("iterations"));

  m.def("export_dot", [](const NetDef& net) { return export_dot(net); });
  m.def("export_dot",
        [](const ChainGraph& graph) { return export_dot(graph); });
  m.def("export_dot",
        [](const NeuronDiagram& diagram) { return export_dot(diagram); });

  m.def("scenario_names", [] { return scenario_names(); });
  m.def("build_scenario",
        [](const std::string& name) { return build_scenario(name); });
  m.def("check_scenario", [](const Scenario& scenario) {
    std::vector<std::tuple<std::string, bool, std::string>> out;
    for (const auto& r : check_scenario(scenario)) {
      out.emplace_back(r.description, r.passed, r.detail);
    }
    return out;
  });
}

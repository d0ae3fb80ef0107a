#include "causanet/dsl.hpp"

#include <algorithm>
#include <charconv>
#include <optional>

#include "causanet/textfmt.hpp"

namespace causanet {

const NetDef* Document::find_net(std::string_view name) const {
  for (const auto& n : nets) {
    if (n.name == name) return &n;
  }
  return nullptr;
}

const FuzzyLabel* Document::find_label(std::string_view name) const {
  for (const auto& l : labels) {
    if (l.name() == name) return &l;
  }
  return nullptr;
}

const ChainGraph* Document::find_chain(std::string_view name) const {
  for (const auto& c : chains) {
    if (c.name() == name) return &c;
  }
  return nullptr;
}

const FuzzyCognitiveMap* Document::find_fcm(std::string_view name) const {
  for (const auto& f : fcms) {
    if (f.name == name) return &f;
  }
  return nullptr;
}

const NeuronDiagram* Document::find_neuron(std::string_view name) const {
  for (const auto& n : neurons) {
    if (n.name == name) return &n;
  }
  return nullptr;
}

namespace {

struct Token {
  std::string text;
  std::size_t column = 0;  // 1-based
  bool quoted = false;
};

struct Line {
  std::size_t number = 0;  // 1-based
  std::vector<Token> tokens;
};

std::optional<double> parse_double(std::string_view s) {
  double v = 0;
  auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
    return std::nullopt;
  }
  return v;
}

std::optional<int> parse_int(std::string_view s) {
  int v = 0;
  auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
    return std::nullopt;
  }
  return v;
}

// Parses "fn(a,b,c)" style calls; returns nullopt when the shape is wrong.
std::optional<std::pair<std::string, std::vector<double>>> parse_call(
    std::string_view s) {
  std::size_t open = s.find('(');
  if (open == std::string_view::npos || s.back() != ')') return std::nullopt;
  std::string fn(s.substr(0, open));
  std::string_view args = s.substr(open + 1, s.size() - open - 2);
  std::vector<double> values;
  std::size_t pos = 0;
  while (pos <= args.size() && !args.empty()) {
    std::size_t comma = args.find(',', pos);
    std::string_view piece = args.substr(
        pos, comma == std::string_view::npos ? args.size() - pos : comma - pos);
    auto v = parse_double(piece);
    if (!v) return std::nullopt;
    values.push_back(*v);
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return std::make_pair(fn, values);
}

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  ParseResult run();

 private:
  // --- lexing ---
  std::vector<Line> lex();

  // --- diagnostics ---
  void diag(std::size_t line, std::size_t column, std::string message) {
    result_.diagnostics.push_back({line, column, std::move(message)});
  }
  void diag(const Line& line, const Token& tok, std::string message) {
    diag(line.number, tok.column, std::move(message));
  }

  // key=value splitter; returns value when tok looks like "key=...".
  static std::optional<std::string_view> key_value(const Token& tok,
                                                   std::string_view key);

  bool unique_toplevel_name(const Line& line, const Token& tok,
                            std::string_view kind);

  // --- block parsers ---
  void parse_net(const Line& header, std::span<const Line> body);
  void parse_label(const Line& line);
  void parse_chain(const Line& header, std::span<const Line> body);
  void parse_fcm(const Line& header, std::span<const Line> body);
  void parse_neuron(const Line& header, std::span<const Line> body);

  void resolve_pending_gates();

  struct PendingGate {
    std::size_t net;
    std::size_t transition;
    std::string label;
    double delay;
    std::size_t line, column;
  };

  std::string_view text_;
  ParseResult result_;
  std::vector<PendingGate> pending_gates_;
};

std::vector<Line> Parser::lex() {
  std::vector<Line> lines;
  std::size_t line_no = 1;
  std::size_t pos = 0;
  while (pos <= text_.size()) {
    std::size_t eol = text_.find('\n', pos);
    std::string_view raw = text_.substr(
        pos, eol == std::string_view::npos ? text_.size() - pos : eol - pos);
    Line line{line_no, {}};
    std::size_t i = 0;
    while (i < raw.size()) {
      char c = raw[i];
      if (c == ' ' || c == '\t' || c == '\r') {
        ++i;
        continue;
      }
      if (c == '#') break;
      if (c == '"') {
        std::size_t start = i + 1;
        std::size_t close = raw.find('"', start);
        if (close == std::string_view::npos) {
          diag(line_no, i + 1, "unterminated string literal");
          i = raw.size();
          break;
        }
        line.tokens.push_back(
            {std::string(raw.substr(start, close - start)), i + 1, true});
        i = close + 1;
        continue;
      }
      std::size_t start = i;
      while (i < raw.size() && raw[i] != ' ' && raw[i] != '\t' &&
             raw[i] != '\r' && raw[i] != '#') {
        ++i;
      }
      line.tokens.push_back(
          {std::string(raw.substr(start, i - start)), start + 1, false});
    }
    if (!line.tokens.empty()) lines.push_back(std::move(line));
    if (eol == std::string_view::npos) break;
    pos = eol + 1;
    ++line_no;
  }
  return lines;
}

std::optional<std::string_view> Parser::key_value(const Token& tok,
                                                  std::string_view key) {
  if (tok.quoted) return std::nullopt;
  std::string_view s = tok.text;
  if (s.size() <= key.size() + 1) return std::nullopt;
  if (s.substr(0, key.size()) != key || s[key.size()] != '=') {
    return std::nullopt;
  }
  return s.substr(key.size() + 1);
}

bool Parser::unique_toplevel_name(const Line& line, const Token& tok,
                                  std::string_view kind) {
  const Document& doc = result_.document;
  bool clash = false;
  if (kind == "net") clash = doc.find_net(tok.text) != nullptr;
  if (kind == "label") clash = doc.find_label(tok.text) != nullptr;
  if (kind == "chain") clash = doc.find_chain(tok.text) != nullptr;
  if (kind == "fcm") clash = doc.find_fcm(tok.text) != nullptr;
  if (kind == "neuron") clash = doc.find_neuron(tok.text) != nullptr;
  if (clash) {
    diag(line, tok,
         "duplicate " + std::string(kind) + " identifier '" + tok.text + "'");
  }
  return !clash;
}

void Parser::parse_net(const Line& header, std::span<const Line> body) {
  NetDef net;
  net.name = header.tokens[1].text;

  struct ArcRef {
    std::string place;
    int weight;
    std::size_t line, column;
  };
  struct TransRef {
    std::vector<ArcRef> inputs, outputs;
  };
  std::vector<TransRef> trans_refs;

  auto name_in_use = [&](std::string_view n) {
    return net.place_index(n).has_value() ||
           net.transition_index(n).has_value();
  };

  auto parse_arc_list = [&](const Line& line, const Token& tok,
                            std::vector<ArcRef>& out) {
    std::string_view s = tok.text;
    std::size_t pos = 0;
    while (pos < s.size()) {
      std::size_t comma = s.find(',', pos);
      std::string_view piece = s.substr(
          pos, comma == std::string_view::npos ? s.size() - pos : comma - pos);
      std::string_view name = piece;
      int weight = 1;
      if (std::size_t colon = piece.find(':');
          colon != std::string_view::npos) {
        name = piece.substr(0, colon);
        auto w = parse_int(piece.substr(colon + 1));
        if (!w) {
          diag(line, tok, "bad arc weight in '" + std::string(piece) + "'");
          return;
        }
        weight = *w;
      }
      if (name.empty()) {
        diag(line, tok, "empty place name in arc list");
        return;
      }
      out.push_back({std::string(name), weight, line.number, tok.column});
      if (comma == std::string_view::npos) break;
      pos = comma + 1;
    }
  };

  for (const Line& line : body) {
    const Token& head = line.tokens[0];
    if (head.text == "place") {
      if (line.tokens.size() < 2) {
        diag(line, head, "place needs a name");
        continue;
      }
      const Token& name = line.tokens[1];
      if (name_in_use(name.text)) {
        diag(line, name, "duplicate identifier '" + name.text + "' in net");
        continue;
      }
      int tokens = 0;
      bool ok = true;
      for (std::size_t i = 2; i < line.tokens.size(); ++i) {
        if (auto v = key_value(line.tokens[i], "tokens")) {
          auto t = parse_int(*v);
          if (!t) {
            diag(line, line.tokens[i], "bad token count '" + std::string(*v) +
                                           "'");
            ok = false;
            break;
          }
          tokens = *t;
        } else {
          diag(line, line.tokens[i],
               "unexpected token '" + line.tokens[i].text + "' after place");
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      net.places.push_back(name.text);
      net.initial_tokens.push_back(tokens);
    } else if (head.text == "trans") {
      if (line.tokens.size() < 2) {
        diag(line, head, "trans needs a name");
        continue;
      }
      const Token& name = line.tokens[1];
      if (name_in_use(name.text)) {
        diag(line, name, "duplicate identifier '" + name.text + "' in net");
        continue;
      }
      TransitionDef t;
      t.name = name.text;
      TransRef refs;
      std::optional<TimingSpec> delay;
      std::optional<std::string> fuzzy_label;
      std::size_t fuzzy_line = 0, fuzzy_col = 0;
      double conflict_weight = 1.0;
      bool ok = true;
      std::size_t i = 2;
      while (i < line.tokens.size() && ok) {
        const Token& tok = line.tokens[i];
        if (tok.text == "in" && i + 1 < line.tokens.size()) {
          parse_arc_list(line, line.tokens[i + 1], refs.inputs);
          i += 2;
        } else if (tok.text == "out" && i + 1 < line.tokens.size()) {
          parse_arc_list(line, line.tokens[i + 1], refs.outputs);
          i += 2;
        } else if (auto v = key_value(tok, "delay")) {
          if (*v == "imm") {
            delay = TimingSpec::immediate();
          } else if (auto call = parse_call(*v)) {
            auto& [fn, args] = *call;
            if (fn == "det" && args.size() == 1) {
              delay = TimingSpec::deterministic(args[0]);
            } else if (fn == "exp" && args.size() == 1) {
              delay = TimingSpec::exponential(args[0]);
            } else if (fn == "unif" && args.size() == 2) {
              delay = TimingSpec::uniform(args[0], args[1]);
            } else {
              diag(line, tok, "unknown delay spec '" + std::string(*v) + "'");
              ok = false;
            }
          } else {
            diag(line, tok, "unknown delay spec '" + std::string(*v) + "'");
            ok = false;
          }
          ++i;
        } else if (auto v = key_value(tok, "fuzzy")) {
          fuzzy_label = std::string(*v);
          fuzzy_line = line.number;
          fuzzy_col = tok.column;
          ++i;
        } else if (auto v = key_value(tok, "weight")) {
          auto w = parse_double(*v);
          if (!w) {
            diag(line, tok, "bad conflict weight '" + std::string(*v) + "'");
            ok = false;
          } else {
            conflict_weight = *w;
          }
          ++i;
        } else {
          diag(line, tok, "unexpected token '" + tok.text + "' in trans");
          ok = false;
        }
      }
      if (!ok) continue;
      if (fuzzy_label) {
        if (delay && delay->kind != TimingSpec::Kind::deterministic &&
            delay->kind != TimingSpec::Kind::immediate) {
          diag(line, name,
               "fuzzy-gated transition '" + t.name +
                   "' needs a fixed delay (imm or det)");
          continue;
        }
        double d = delay ? delay->delay : 0.0;
        // Gate resolution happens once all labels are known.
        t.timing.kind = TimingSpec::Kind::fuzzy_gated;
        t.timing.delay = d;
        pending_gates_.push_back({result_.document.nets.size(),
                                  net.transitions.size(), *fuzzy_label, d,
                                  fuzzy_line, fuzzy_col});
      } else if (delay) {
        t.timing = *delay;
      }
      t.timing.conflict_weight = conflict_weight;
      net.transitions.push_back(std::move(t));
      trans_refs.push_back(std::move(refs));
    } else {
      diag(line, head, "unknown keyword '" + head.text + "' in net block");
    }
  }

  // Arc resolution after the whole block so places may be declared anywhere.
  for (std::size_t ti = 0; ti < net.transitions.size(); ++ti) {
    auto resolve = [&](const std::vector<ArcRef>& refs, std::vector<Arc>& out) {
      for (const auto& ref : refs) {
        auto p = net.place_index(ref.place);
        if (!p) {
          diag(ref.line, ref.column,
               "transition '" + net.transitions[ti].name +
                   "' references undeclared place '" + ref.place + "'");
          continue;
        }
        out.push_back({*p, ref.weight});
      }
    };
    resolve(trans_refs[ti].inputs, net.transitions[ti].inputs);
    resolve(trans_refs[ti].outputs, net.transitions[ti].outputs);
  }

  result_.document.nets.push_back(std::move(net));
  result_.document.order.push_back(
      {Document::ItemKind::net, result_.document.nets.size() - 1});
}

void Parser::parse_label(const Line& line) {
  if (line.tokens.size() != 3) {
    diag(line, line.tokens[0], "label syntax: label NAME shape(args)");
    return;
  }
  const Token& name = line.tokens[1];
  if (!unique_toplevel_name(line, name, "label")) return;
  auto call = parse_call(line.tokens[2].text);
  if (!call) {
    diag(line, line.tokens[2],
         "bad label shape '" + line.tokens[2].text + "'");
    return;
  }
  auto& [fn, args] = *call;
  try {
    if (fn == "crisp" && args.size() == 1) {
      result_.document.labels.push_back(FuzzyLabel::crisp(name.text, args[0]));
    } else if (fn == "tri" && args.size() == 3) {
      result_.document.labels.push_back(
          FuzzyLabel::triangular(name.text, args[0], args[1], args[2]));
    } else if (fn == "trap" && args.size() == 4) {
      result_.document.labels.push_back(FuzzyLabel::trapezoidal(
          name.text, args[0], args[1], args[2], args[3]));
    } else {
      diag(line, line.tokens[2],
           "unknown label shape '" + line.tokens[2].text + "'");
      return;
    }
  } catch (const Error& e) {
    diag(line, line.tokens[2], e.what());
    return;
  }
  result_.document.order.push_back(
      {Document::ItemKind::label, result_.document.labels.size() - 1});
}

void Parser::parse_chain(const Line& header, std::span<const Line> body) {
  ChainGraph graph(header.tokens[1].text);
  for (const Line& line : body) {
    const auto& toks = line.tokens;
    if (toks[0].text != "edge") {
      diag(line, toks[0], "unknown keyword '" + toks[0].text +
                              "' in chain block");
      continue;
    }
    // edge X -> Y adverb "text" mean=m std=s
    if (toks.size() != 8 || toks[2].text != "->" ||
        toks[4].text != "adverb") {
      diag(line, toks[0],
           "edge syntax: edge X -> Y adverb \"text\" mean=m std=s");
      continue;
    }
    auto mean = key_value(toks[6], "mean");
    auto std_ = key_value(toks[7], "std");
    auto m = mean ? parse_double(*mean) : std::nullopt;
    auto s = std_ ? parse_double(*std_) : std::nullopt;
    if (!m || !s) {
      diag(line, toks[6], "edge needs mean=<num> std=<num>");
      continue;
    }
    try {
      graph.add_edge(toks[1].text, toks[3].text,
                     AdverbDistribution{toks[5].text, *m, *s});
    } catch (const Error& e) {
      diag(line, toks[1], e.what());
    }
  }
  result_.document.chains.push_back(std::move(graph));
  result_.document.order.push_back(
      {Document::ItemKind::chain, result_.document.chains.size() - 1});
}

void Parser::parse_fcm(const Line& header, std::span<const Line> body) {
  FuzzyCognitiveMap map;
  map.name = header.tokens[1].text;

  struct EdgeRef {
    std::string source, target;
    double weight;
    int delay;
    std::size_t line, column;
  };
  std::vector<EdgeRef> edge_refs;

  for (const Line& line : body) {
    const auto& toks = line.tokens;
    if (toks[0].text == "concept") {
      if (toks.size() < 2) {
        diag(line, toks[0], "concept needs a name");
        continue;
      }
      if (map.concept_index(toks[1].text)) {
        diag(line, toks[1], "duplicate concept '" + toks[1].text + "'");
        continue;
      }
      double init = 0.0;
      bool ok = true;
      for (std::size_t i = 2; i < toks.size(); ++i) {
        if (auto v = key_value(toks[i], "init")) {
          auto x = parse_double(*v);
          if (!x || *x < -1.0 || *x > 1.0) {
            diag(line, toks[i], "concept init must lie in [-1,1]");
            ok = false;
            break;
          }
          init = *x;
        } else {
          diag(line, toks[i], "unexpected token '" + toks[i].text + "'");
          ok = false;
          break;
        }
      }
      if (ok) map.concepts.push_back({toks[1].text, init});
    } else if (toks[0].text == "edge") {
      // edge X -> Y w=v [delay=d]
      if (toks.size() < 5 || toks[2].text != "->") {
        diag(line, toks[0], "edge syntax: edge X -> Y w=v [delay=d]");
        continue;
      }
      std::optional<double> weight;
      int delay = 0;
      bool ok = true;
      for (std::size_t i = 4; i < toks.size(); ++i) {
        if (auto v = key_value(toks[i], "w")) {
          weight = parse_double(*v);
          if (!weight || *weight < -1.0 || *weight > 1.0) {
            diag(line, toks[i], "edge weight must lie in [-1,1]");
            ok = false;
            break;
          }
        } else if (auto v = key_value(toks[i], "delay")) {
          auto d = parse_int(*v);
          if (!d || *d < 0) {
            diag(line, toks[i], "edge delay must be a non-negative integer");
            ok = false;
            break;
          }
          delay = *d;
        } else {
          diag(line, toks[i], "unexpected token '" + toks[i].text + "'");
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      if (!weight) {
        diag(line, toks[0], "edge needs w=<num>");
        continue;
      }
      edge_refs.push_back(
          {toks[1].text, toks[3].text, *weight, delay, line.number,
           toks[1].column});
    } else {
      diag(line, toks[0], "unknown keyword '" + toks[0].text +
                              "' in fcm block");
    }
  }

  for (const auto& ref : edge_refs) {
    auto s = map.concept_index(ref.source);
    auto t = map.concept_index(ref.target);
    if (!s || !t) {
      diag(ref.line, ref.column,
           "fcm edge references undeclared concept '" +
               (s ? ref.target : ref.source) + "'");
      continue;
    }
    map.edges.push_back({*s, *t, ref.weight, ref.delay});
  }

  result_.document.fcms.push_back(std::move(map));
  result_.document.order.push_back(
      {Document::ItemKind::fcm, result_.document.fcms.size() - 1});
}

void Parser::parse_neuron(const Line& header, std::span<const Line> body) {
  NeuronDiagram diagram;
  diagram.name = header.tokens[1].text;

  struct EdgeRef {
    std::string source, target;
    NeuronDiagram::EdgeKind kind;
    std::size_t line, column;
  };
  std::vector<EdgeRef> edge_refs;

  for (const Line& line : body) {
    const auto& toks = line.tokens;
    if (toks[0].text == "node") {
      if (toks.size() < 2 || toks.size() > 3 ||
          (toks.size() == 3 && toks[2].text != "shaded")) {
        diag(line, toks[0], "node syntax: node NAME [shaded]");
        continue;
      }
      if (diagram.node_index(toks[1].text)) {
        diag(line, toks[1], "duplicate node '" + toks[1].text + "'");
        continue;
      }
      diagram.nodes.push_back({toks[1].text, toks.size() == 3});
    } else if (toks[0].text == "stim" || toks[0].text == "inhib") {
      if (toks.size() != 4 || toks[2].text != "->") {
        diag(line, toks[0], toks[0].text + " syntax: " + toks[0].text +
                                " X -> Y");
        continue;
      }
      edge_refs.push_back({toks[1].text, toks[3].text,
                           toks[0].text == "stim"
                               ? NeuronDiagram::EdgeKind::stimulatory
                               : NeuronDiagram::EdgeKind::inhibitory,
                           line.number, toks[1].column});
    } else {
      diag(line, toks[0],
           "unknown keyword '" + toks[0].text + "' in neuron block");
    }
  }

  for (const auto& ref : edge_refs) {
    auto s = diagram.node_index(ref.source);
    auto t = diagram.node_index(ref.target);
    if (!s || !t) {
      diag(ref.line, ref.column,
           "neuron edge references undeclared node '" +
               (s ? ref.target : ref.source) + "'");
      continue;
    }
    diagram.edges.push_back({*s, *t, ref.kind});
  }

  try {
    neuron_evaluate(diagram);  // acyclicity check
  } catch (const Error& e) {
    diag(header.number, header.tokens[0].column, e.what());
  }

  result_.document.neurons.push_back(std::move(diagram));
  result_.document.order.push_back(
      {Document::ItemKind::neuron, result_.document.neurons.size() - 1});
}

void Parser::resolve_pending_gates() {
  for (const auto& pending : pending_gates_) {
    const FuzzyLabel* label = result_.document.find_label(pending.label);
    if (!label) label = find_builtin_label(pending.label);
    if (!label) {
      diag(pending.line, pending.column,
           "unknown fuzzy label '" + pending.label + "'");
      continue;
    }
    TimingSpec& spec =
        result_.document.nets[pending.net].transitions[pending.transition]
            .timing;
    double conflict_weight = spec.conflict_weight;
    spec = TimingSpec::fuzzy_gated(*label, pending.delay);
    spec.conflict_weight = conflict_weight;
  }
}

ParseResult Parser::run() {
  std::vector<Line> lines = lex();
  std::size_t i = 0;
  while (i < lines.size()) {
    const Line& line = lines[i];
    const Token& head = line.tokens[0];
    bool block = head.text == "net" || head.text == "chain" ||
                 head.text == "fcm" || head.text == "neuron";
    if (block) {
      if (line.tokens.size() != 2) {
        diag(line, head, head.text + " syntax: " + head.text + " NAME");
        ++i;
        continue;
      }
      unique_toplevel_name(line, line.tokens[1], head.text);
      std::size_t body_start = i + 1;
      std::size_t j = body_start;
      while (j < lines.size() && lines[j].tokens[0].text != "end") ++j;
      if (j == lines.size()) {
        diag(line, head, "unterminated " + head.text + " block (missing end)");
      }
      std::span<const Line> body(lines.data() + body_start, j - body_start);
      if (head.text == "net") parse_net(line, body);
      if (head.text == "chain") parse_chain(line, body);
      if (head.text == "fcm") parse_fcm(line, body);
      if (head.text == "neuron") parse_neuron(line, body);
      i = j < lines.size() ? j + 1 : j;
    } else if (head.text == "label") {
      parse_label(line);
      ++i;
    } else if (head.text == "end") {
      diag(line, head, "'end' without an open block");
      ++i;
    } else {
      diag(line, head, "unknown keyword '" + head.text + "'");
      ++i;
    }
  }
  resolve_pending_gates();
  return std::move(result_);
}

}  // namespace

ParseResult parse_document(std::string_view text) {
  return Parser(text).run();
}

namespace {

std::string arc_list_to_string(const NetDef& net, const std::vector<Arc>& arcs) {
  std::string out;
  for (std::size_t i = 0; i < arcs.size(); ++i) {
    if (i) out += ',';
    out += net.places[arcs[i].place];
    if (arcs[i].weight != 1) out += ':' + std::to_string(arcs[i].weight);
  }
  return out;
}

std::string label_shape_to_string(const FuzzyLabel& label) {
  auto p = label.points();
  switch (label.shape()) {
    case FuzzyLabel::Shape::crisp:
      return "crisp(" + format_number(p[0]) + ")";
    case FuzzyLabel::Shape::triangular:
      return "tri(" + format_number(p[0]) + "," + format_number(p[1]) + "," +
             format_number(p[2]) + ")";
    case FuzzyLabel::Shape::trapezoidal:
      return "trap(" + format_number(p[0]) + "," + format_number(p[1]) + "," +
             format_number(p[2]) + "," + format_number(p[3]) + ")";
  }
  return "";
}

std::string timing_to_string(const TimingSpec& spec) {
  std::string out;
  switch (spec.kind) {
    case TimingSpec::Kind::immediate:
      break;  // default, omitted
    case TimingSpec::Kind::deterministic:
      out += " delay=det(" + format_number(spec.delay) + ")";
      break;
    case TimingSpec::Kind::exponential:
      out += " delay=exp(" + format_number(spec.rate) + ")";
      break;
    case TimingSpec::Kind::uniform:
      out += " delay=unif(" + format_number(spec.lo) + "," +
             format_number(spec.hi) + ")";
      break;
    case TimingSpec::Kind::fuzzy_gated:
      if (spec.delay != 0.0) {
        out += " delay=det(" + format_number(spec.delay) + ")";
      }
      out += " fuzzy=" + spec.gate->name();
      break;
  }
  if (spec.conflict_weight != 1.0) {
    out += " weight=" + format_number(spec.conflict_weight);
  }
  return out;
}

}  // namespace

std::string serialize_net(const NetDef& net) {
  std::string out = "net " + net.name + "\n";
  for (std::size_t i = 0; i < net.places.size(); ++i) {
    out += "  place " + net.places[i];
    if (i < net.initial_tokens.size() && net.initial_tokens[i] != 0) {
      out += " tokens=" + std::to_string(net.initial_tokens[i]);
    }
    out += '\n';
  }
  for (const auto& t : net.transitions) {
    out += "  trans " + t.name;
    if (!t.inputs.empty()) out += " in " + arc_list_to_string(net, t.inputs);
    if (!t.outputs.empty()) {
      out += " out " + arc_list_to_string(net, t.outputs);
    }
    out += timing_to_string(t.timing);
    out += '\n';
  }
  out += "end\n";
  return out;
}

std::string serialize_document(const Document& doc) {
  std::string out;
  for (const auto& item : doc.order) {
    switch (item.kind) {
      case Document::ItemKind::net:
        out += serialize_net(doc.nets[item.index]);
        break;
      case Document::ItemKind::label: {
        const FuzzyLabel& label = doc.labels[item.index];
        out += "label " + label.name() + " " + label_shape_to_string(label) +
               "\n";
        break;
      }
      case Document::ItemKind::chain: {
        const ChainGraph& graph = doc.chains[item.index];
        out += "chain " + graph.name() + "\n";
        for (const auto& e : graph.edges()) {
          for (const auto& s : e.strengths) {
            out += "  edge " + graph.nodes()[e.source] + " -> " +
                   graph.nodes()[e.target] + " adverb \"" + s.adverb +
                   "\" mean=" + format_number(s.mean) +
                   " std=" + format_number(s.stddev) + "\n";
          }
        }
        out += "end\n";
        break;
      }
      case Document::ItemKind::fcm: {
        const FuzzyCognitiveMap& map = doc.fcms[item.index];
        out += "fcm " + map.name + "\n";
        for (const auto& c : map.concepts) {
          out += "  concept " + c.name;
          if (c.initial != 0.0) out += " init=" + format_number(c.initial);
          out += '\n';
        }
        for (const auto& e : map.edges) {
          out += "  edge " + map.concepts[e.source].name + " -> " +
                 map.concepts[e.target].name + " w=" + format_number(e.weight);
          if (e.delay != 0) out += " delay=" + std::to_string(e.delay);
          out += '\n';
        }
        out += "end\n";
        break;
      }
      case Document::ItemKind::neuron: {
        const NeuronDiagram& diagram = doc.neurons[item.index];
        out += "neuron " + diagram.name + "\n";
        for (const auto& n : diagram.nodes) {
          out += "  node " + n.name;
          if (n.shaded) out += " shaded";
          out += '\n';
        }
        for (const auto& e : diagram.edges) {
          out += e.kind == NeuronDiagram::EdgeKind::stimulatory ? "  stim "
                                                                : "  inhib ";
          out += diagram.nodes[e.source].name + " -> " +
                 diagram.nodes[e.target].name + "\n";
        }
        out += "end\n";
        break;
      }
    }
  }
  return out;
}

}  // namespace causanet

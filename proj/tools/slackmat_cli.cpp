#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "slackmat/decompose.hpp"
#include "slackmat/graph.hpp"
#include "slackmat/json_io.hpp"
#include "slackmat/matroid.hpp"
#include "slackmat/matrix.hpp"
#include "slackmat/polyhedra.hpp"
#include "slackmat/products.hpp"
#include "slackmat/stab.hpp"

using namespace slackmat;
using nlohmann::json;

namespace {

struct Options {
  std::string format = "json";
  double tol = 1e-9;  // float-phase screening tolerance; all verdicts are
                      // confirmed exactly, so this never changes an answer
  long long seed = 0;
  int threads = 1;
  std::string output;
};

// matrix inputs may be the text grammar ("m n" + entries) or a JSON document
// (bare matrix object or {"matrix": ...} wrapper)
RationalMatrix load_matrix(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  char c = 0;
  while (in.get(c) && isspace(static_cast<unsigned char>(c))) {
  }
  if (!in) throw ParseError(1, 1, "empty input");
  in.putback(c);
  if (c == '{') {
    json j = json::parse(in);
    if (j.contains("matrix")) return matrix_from_json(j.at("matrix"));
    return matrix_from_json(j);
  }
  return RationalMatrix::read(in);
}

json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  return json::parse(in);
}

void emit(const Options& o, const std::string& text) {
  if (o.output.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(o.output);
  if (!out) throw std::runtime_error("cannot write '" + o.output + "'");
  out << text;
}

void emit_doc(const Options& o, const std::string& verb, json payload) {
  payload["schema_version"] = 1;
  payload["verb"] = verb;
  emit(o, payload.dump(2) + "\n");
}

void emit_matrix(const Options& o, const RationalMatrix& S) {
  if (o.format == "text") {
    emit(o, S.to_text());
    return;
  }
  json j;
  j["schema_version"] = 1;
  j["matrix"] = matrix_to_json(S);
  emit(o, j.dump(2) + "\n");
}

std::string rationals_to_text(const std::vector<Rational>& v) {
  std::string s;
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) s += ' ';
    s += format_rational(v[i]);
  }
  return s;
}

json rationals_to_json(const std::vector<Rational>& v) {
  json a = json::array();
  for (const Rational& r : v) a.push_back(format_rational(r));
  return a;
}

int run_decompose(const Options& o, const std::string& file, int k) {
  RationalMatrix S = load_matrix(file);
  auto kp = recognize_kproduct(S, k);
  if (!kp) {
    if (o.format == "text")
      emit(o, "not a " + std::to_string(k) + "-product\n");
    else
      emit_doc(o, "decompose", json{{"recognized", false}, {"k", k}});
    return 1;
  }
  FactorizationTree t = tree_from_kproduct(S, *kp);
  if (o.format == "text") {
    std::ostringstream os;
    os << k << "-product of " << t.left->matrix.rows() << "x" << t.left->matrix.cols()
       << " and " << t.right->matrix.rows() << "x" << t.right->matrix.cols() << "\n";
    os << "special rows:";
    for (const auto& l : t.special_labels) os << ' ' << l;
    os << "\n";
    emit(o, os.str());
  } else {
    emit_doc(o, "decompose", json{{"recognized", true}, {"k", k}, {"tree", tree_to_json(t)}});
  }
  return 0;
}

int run_factorize(const Options& o, const std::string& file) {
  RationalMatrix S = load_matrix(file);
  std::vector<RowSet> part = irreducible_partition(S);
  std::vector<RationalMatrix> factors;
  std::function<void(const RationalMatrix&)> split = [&](const RationalMatrix& M) {
    if (M.rows() >= 2) {
      if (auto op = recognize_1product(M)) {
        split(op->s1);
        split(op->s2);
        return;
      }
    }
    factors.push_back(M);
  };
  split(S);
  if (o.format == "text") {
    std::ostringstream os;
    os << part.size() << " irreducible row blocks\n";
    for (const RowSet& b : part) {
      os << " ";
      for (int i : b.indices()) os << ' ' << S.row_label(i);
      os << "\n";
    }
    os << factors.size() << " factors:";
    for (const auto& f : factors) os << ' ' << f.rows() << 'x' << f.cols();
    os << "\n";
    emit(o, os.str());
  } else {
    json blocks = json::array();
    for (const RowSet& b : part) {
      json lbl = json::array();
      for (int i : b.indices()) lbl.push_back(S.row_label(i));
      blocks.push_back(std::move(lbl));
    }
    json fs = json::array();
    for (const auto& f : factors) fs.push_back(matrix_to_json(f));
    emit_doc(o, "factorize", json{{"blocks", std::move(blocks)}, {"factors", std::move(fs)}});
  }
  return 0;
}

int run_verify_slack(const Options& o, const std::string& file, unsigned long long max_candidates) {
  RationalMatrix S = load_matrix(file);
  SlackVerdict v = is_slack_matrix(S, max_candidates);
  if (o.format == "text") {
    std::ostringstream os;
    if (v.status == SlackStatus::yes) os << "YES dim=" << v.dim << "\n";
    if (v.status == SlackStatus::no) {
      os << "NO: " << v.reason << "\n";
      if (v.witness_vertex) os << "witness vertex: " << rationals_to_text(*v.witness_vertex) << "\n";
      if (v.witness_ray) os << "witness ray: " << rationals_to_text(*v.witness_ray) << "\n";
    }
    if (v.status == SlackStatus::too_large) os << "TOO LARGE: " << v.reason << "\n";
    emit(o, os.str());
  } else {
    json j;
    j["status"] = v.status == SlackStatus::yes    ? "yes"
                  : v.status == SlackStatus::no   ? "no"
                                                  : "too_large";
    if (v.status == SlackStatus::yes) j["dim"] = v.dim;
    if (!v.reason.empty()) j["reason"] = v.reason;
    if (v.witness_vertex) j["witness_vertex"] = rationals_to_json(*v.witness_vertex);
    if (v.witness_ray) j["witness_ray"] = rationals_to_json(*v.witness_ray);
    emit_doc(o, "verify-slack", std::move(j));
  }
  return v.status == SlackStatus::yes ? 0 : v.status == SlackStatus::no ? 1 : 2;
}

void print_matroid_tree(std::ostream& os, const MatroidSumTree& t, int depth) {
  std::string pad(2 * depth, ' ');
  switch (t.kind) {
    case MatroidSumTree::Kind::uniform: {
      os << pad << "uniform n=" << t.n << " k=" << t.k << " elements=";
      for (size_t i = 0; i < t.elements.size(); ++i) os << (i ? "," : "") << t.elements[i];
      os << "\n";
      break;
    }
    case MatroidSumTree::Kind::one_sum:
      os << pad << "one_sum\n";
      print_matroid_tree(os, *t.left, depth + 1);
      print_matroid_tree(os, *t.right, depth + 1);
      break;
    case MatroidSumTree::Kind::two_sum:
      os << pad << "two_sum glue=" << t.glue << "\n";
      print_matroid_tree(os, *t.left, depth + 1);
      print_matroid_tree(os, *t.right, depth + 1);
      break;
  }
}

int run_recognize_matroid(const Options& o, const std::string& file) {
  RationalMatrix S = load_matrix(file);
  MatroidRecognition r = recognize_matroid_slack(S);
  if (!r.ok) {
    if (o.format == "text")
      emit(o, "not a matroid base polytope slack matrix: " + r.reason + "\n");
    else
      emit_doc(o, "recognize-matroid", json{{"recognized", false}, {"reason", r.reason}});
    return 1;
  }
  if (o.format == "text") {
    std::ostringstream os;
    os << "matroid with " << ground_set(r.tree).size() << " elements, rank "
       << matroid_rank(r.tree) << ", " << r.bases.size() << " bases\n";
    print_matroid_tree(os, r.tree, 0);
    emit(o, os.str());
  } else {
    json bases = json::array();
    for (const auto& b : r.bases) bases.push_back(b);
    emit_doc(o, "recognize-matroid",
             json{{"recognized", true},
                  {"tree", matroid_to_json(r.tree)},
                  {"ground", ground_set(r.tree)},
                  {"rank", matroid_rank(r.tree)},
                  {"bases", std::move(bases)}});
  }
  return 0;
}

int run_recognize_stab(const Options& o, const std::string& file) {
  RationalMatrix S = load_matrix(file);
  auto w = recognize_stab_slack(S);
  if (!w) {
    if (o.format == "text")
      emit(o, "not a stable set polytope slack matrix of a perfect graph\n");
    else
      emit_doc(o, "recognize-perfect-stab", json{{"recognized", false}});
    return 1;
  }
  if (o.format == "text") {
    std::ostringstream os;
    os << "perfect graph with " << w->graph.vertices() << " vertices\n";
    for (auto& [u, v] : w->graph.edges())
      os << w->graph.label(u) << " -- " << w->graph.label(v) << "\n";
    os << "empty set column: " << w->empty_set_column << "\n";
    emit(o, os.str());
  } else {
    json j = stab_witness_to_json(*w);
    j["recognized"] = true;
    emit_doc(o, "recognize-perfect-stab", std::move(j));
  }
  return 0;
}

int run_generate_product(const Options& o, const std::string& f1, const std::string& f2, int k,
                         const std::vector<int>& left, const std::vector<int>& right) {
  if (static_cast<int>(left.size()) != k - 1 || static_cast<int>(right.size()) != k - 1)
    throw std::invalid_argument("generate product: need exactly k-1 special rows per factor");
  RationalMatrix S1 = load_matrix(f1), S2 = load_matrix(f2);
  RationalMatrix P = k == 1 ? one_product(S1, S2)
                            : k_product(S1, SpecialRowTuple{left}, S2, SpecialRowTuple{right});
  emit_matrix(o, P);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "slack matrix toolkit: k-products, slack verification, matroid and "
      "perfect-graph recognition"};
  app.require_subcommand(1);

  Options o;
  app.add_option("--format", o.format, "output format")->check(CLI::IsMember({"json", "text"}));
  app.add_option("--tol", o.tol, "float-phase screening tolerance")->check(CLI::PositiveNumber);
  app.add_option("--seed", o.seed, "seed for randomized utilities (none in the current verbs)");
  app.add_option("--threads", o.threads, "worker cap (current implementation is single-threaded)")
      ->check(CLI::PositiveNumber);
  app.add_option("-o,--output", o.output, "write output to this file instead of stdout");

  std::string file, file2;
  int k = 2;
  unsigned long long max_candidates = 2000000ULL;
  std::vector<int> special_left, special_right;
  int hn = 0, hk = 0;

  CLI::App* decompose = app.add_subcommand("decompose", "recognize a k-product and emit the tree");
  decompose->add_option("--k", k, "product arity")->required()->check(CLI::PositiveNumber);
  decompose->add_option("file", file, "matrix file")->required();

  CLI::App* factorize = app.add_subcommand("factorize", "split into irreducible 1-product factors");
  factorize->add_option("file", file, "matrix file")->required();

  CLI::App* verify = app.add_subcommand("verify-slack", "decide whether the matrix is a slack matrix");
  verify->add_option("file", file, "matrix file")->required();
  verify->add_option("--max-bases", max_candidates, "vertex-candidate cap");

  CLI::App* recognize = app.add_subcommand("recognize", "recover the combinatorial object behind a slack matrix");
  recognize->require_subcommand(1);
  CLI::App* rec_mat = recognize->add_subcommand("matroid", "matroid base polytope recognition");
  rec_mat->add_option("file", file, "matrix file")->required();
  CLI::App* rec_stab = recognize->add_subcommand("perfect-stab", "stable set polytope recognition");
  rec_stab->add_option("file", file, "matrix file")->required();

  CLI::App* generate = app.add_subcommand("generate", "emit example slack matrices");
  generate->require_subcommand(1);
  CLI::App* gen_hyp = generate->add_subcommand("hypersimplex", "slack matrix of a hypersimplex");
  gen_hyp->add_option("n", hn, "ground set size")->required();
  gen_hyp->add_option("k", hk, "subset size")->required();
  CLI::App* gen_stab = generate->add_subcommand("stab", "stable set polytope slack matrix of a graph");
  gen_stab->add_option("graphfile", file, "graph file (\"d e\" header + edge lines)")->required();
  CLI::App* gen_mat = generate->add_subcommand("matroid-slack", "base polytope slack matrix of a sum tree");
  gen_mat->add_option("treefile", file, "matroid sum tree JSON")->required();
  CLI::App* gen_prod = generate->add_subcommand("product", "k-product of two matrices");
  gen_prod->add_option("factor1", file, "matrix file")->required();
  gen_prod->add_option("factor2", file2, "matrix file")->required();
  gen_prod->add_option("--k", k, "product arity")->check(CLI::PositiveNumber);
  gen_prod->add_option("--special-left", special_left, "special row indices in factor1")
      ->delimiter(',');
  gen_prod->add_option("--special-right", special_right, "special row indices in factor2")
      ->delimiter(',');

  // let the global options (--format, -o, ...) appear after the verb too
  std::function<void(CLI::App*)> allow_globals = [&](CLI::App* a) {
    a->fallthrough();
    for (CLI::App* s : a->get_subcommands({})) allow_globals(s);
  };
  allow_globals(&app);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (decompose->parsed()) return run_decompose(o, file, k);
    if (factorize->parsed()) return run_factorize(o, file);
    if (verify->parsed()) return run_verify_slack(o, file, max_candidates);
    if (rec_mat->parsed()) return run_recognize_matroid(o, file);
    if (rec_stab->parsed()) return run_recognize_stab(o, file);
    if (gen_hyp->parsed()) {
      emit_matrix(o, hypersimplex_slack(hn, hk));
      return 0;
    }
    if (gen_stab->parsed()) {
      Graph g = Graph::read_file(file);
      try {
        if (!is_perfect(g))
          std::cerr << "warning: graph is not perfect; output is the clique relaxation, "
                       "not a slack matrix of its stable set polytope\n";
      } catch (const std::length_error&) {
        std::cerr << "warning: graph too large for the perfection check\n";
      }
      emit_matrix(o, stab_slack(g));
      return 0;
    }
    if (gen_mat->parsed()) {
      MatroidSumTree t = matroid_from_json(load_json(file));
      emit_matrix(o, base_polytope_slack(t).matrix);
      return 0;
    }
    if (gen_prod->parsed())
      return run_generate_product(o, file, file2, gen_prod->count("--k") ? k : 1, special_left,
                                  special_right);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::length_error& e) {
    std::cerr << "error: cap exceeded: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

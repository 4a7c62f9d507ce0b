#include "qchar/compact_store.hpp"
#include "qchar/crystal.hpp"
#include "qchar/engine.hpp"
#include "qchar/errors.hpp"
#include "qchar/io.hpp"
#include "qchar/restriction.hpp"
#include "qchar/standard_kl.hpp"

#include "CLI11.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <new>
#include <set>
#include <sstream>
#include <string>
#include <vector>

using namespace qchar;

namespace {

enum Exit { kOk = 0, kUsage = 1, kAlgorithm = 2, kMismatch = 3, kResource = 4 };

struct Common {
  std::string type;
  std::string out;
  std::string format = "text";
  bool flat = false;
  bool chi = false;
  long max_depth = 100000;
  unsigned threads = 1;
};

std::shared_ptr<const DynkinData> load_type(const std::string& type) {
  if (std::filesystem::exists(type)) return std::make_shared<const DynkinData>(DynkinData::from_edge_file(type));
  return std::make_shared<const DynkinData>(DynkinData::parse(type));
}

std::vector<std::string> split_commas(const std::string& s) {
  std::vector<std::string> parts;
  std::stringstream ss(s);
  std::string p;
  while (std::getline(ss, p, ','))
    if (!p.empty()) parts.push_back(p);
  return parts;
}

void emit_qchar(const Common& c, const QChar& raw) {
  QChar q = c.chi ? raw.to_chi() : raw;
  bool binary = c.format == "bin";
  if (!c.out.empty()) {
    save_qchar(c.out, q, binary ? FileFormat::binary : FileFormat::text, !c.flat);
    return;
  }
  if (binary) {
    auto bytes = serialize(q, !c.flat);
    std::cout.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  } else {
    write_text(std::cout, q);
  }
}

QChar load_input(const std::string& path) {
  if (path.empty() || path == "-") {
    std::string all((std::istreambuf_iterator<char>(std::cin)), {});
    std::vector<std::uint8_t> bytes(all.begin(), all.end());
    if (bytes.size() >= 4 && all.compare(0, 4, "QCHT") == 0) return deserialize(bytes);
    std::istringstream in(all);
    return read_text(in);
  }
  return load_qchar(path);
}

void add_engine_options(CLI::App* sub, Common& c) {
  sub->add_option("--out", c.out, "Output file (stdout when omitted)");
  sub->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"text", "bin"}));
  sub->add_flag("--flat", c.flat, "Flat binary records instead of front coding");
  sub->add_flag("--chi", c.chi, "Write the bar-invariant normalization instead of qch");
  sub->add_option("--max-depth", c.max_depth, "Depth guard");
  sub->add_option("--threads", c.threads, "Worker threads")->check(CLI::Range(1u, 1024u));
}

void print_layer(const LayerStats& s) {
  std::cerr << "layer " << s.depth << " finalized " << s.finalized << " emitted " << s.emitted << " total "
            << s.total_emitted << " pending " << s.pending << " rss_kb " << s.rss_kb << " peak_kb " << s.peak_rss_kb
            << '\n';
}

void print_warnings(const std::vector<std::string>& w) {
  for (const auto& s : w) std::cerr << "warning: " << s << '\n';
}

// Hands every stored term of `partial` to `sink`, one layer at a time.
void replay(const QChar& partial, TermSink& sink) {
  std::vector<QCharTerm> layer;
  long depth = -1;
  for (const auto& t : partial.terms()) {
    if (t.v.depth() != depth && !layer.empty()) {
      sink.accept_layer(depth, std::move(layer), nullptr);
      layer.clear();
    }
    depth = t.v.depth();
    layer.push_back(t);
  }
  if (!layer.empty()) sink.accept_layer(depth, std::move(layer), nullptr);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"qchar: t-analogs of q-characters of quantum loop algebras"};
  app.require_subcommand(1);

  Common c;
  int node = 0;
  std::string drinfeld, in_path, weights, factors, check_against, checkpoint, resume, check_ic;
  bool mem_report = false, compact = false, tolerant = false, table = false;
  long checkpoint_every = 0;
  std::size_t bound = 10'000'000;
  std::string convention = "kashiwara";

  auto* fund = app.add_subcommand("fund", "q-character of an l-fundamental module");
  fund->add_option("--type", c.type, "Cartan type (A5, D4, E8) or adjacency file")->required();
  fund->add_option("--node", node, "Fundamental node")->required();
  add_engine_options(fund, c);
  fund->add_flag("--mem-report", mem_report, "Per-layer counts and resident memory on stderr");
  fund->add_flag("--compact", compact, "Keep finished layers in the compressed store");
  fund->add_option("--checkpoint", checkpoint, "Checkpoint file");
  fund->add_option("--checkpoint-every", checkpoint_every, "Layers between checkpoints");
  fund->add_option("--resume", resume, "Resume from a checkpoint file");

  auto* general = app.add_subcommand("general", "q-character from Drinfeld roots");
  general->add_option("--type", c.type, "Cartan type or adjacency file")->required();
  general->add_option("--drinfeld", drinfeld, "Roots as i:k tokens, e.g. 1:0,1:0")->required();
  general->add_flag("--tolerant", tolerant, "Finalize l-dominant monomials whose colorings agree");
  general->add_flag("--mem-report", mem_report, "Per-layer counts and resident memory on stderr");
  add_engine_options(general, c);

  auto* parse = app.add_subcommand("parse", "Read a q-character file and write it back canonically");
  parse->add_option("--in", in_path, "Input file, - for stdin");
  parse->add_option("--out", c.out, "Output file");
  parse->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"text", "bin"}));
  parse->add_flag("--flat", c.flat, "Flat binary records");
  parse->add_flag("--chi", c.chi, "Convert to the bar-invariant normalization");

  auto* restrict_cmd = app.add_subcommand("restrict", "Graded classical character of a q-character file");
  restrict_cmd->add_option("--in", in_path, "Input file, - for stdin")->required();
  restrict_cmd->add_flag("--table", table, "Aligned table before the records");

  auto* decompose_cmd = app.add_subcommand("decompose", "Graded multiplicities of irreducibles");
  decompose_cmd->add_option("--in", in_path, "Input file, - for stdin")->required();
  decompose_cmd->add_flag("--table", table, "Aligned table before the records");

  auto* ic = app.add_subcommand("ic", "P(t) and IC(t) over a list of dominant weights");
  ic->add_option("--type", c.type, "Cartan type or adjacency file")->required();
  ic->add_option("--weights", weights, "Comma-separated weights, highest first")->required();
  ic->add_option("--threads", c.threads, "Worker threads")->check(CLI::Range(1u, 1024u));
  ic->add_option("--out", c.out, "Write IC machine records here");
  ic->add_option("--check", check_ic, "Compare IC with a matrix record file");

  auto* tensor = app.add_subcommand("tensor", "Twisted product of standard-module factors");
  tensor->add_option("--factors", factors, "Comma-separated q-character files, in product order")->required();
  tensor->add_option("--out", c.out, "Output file");
  tensor->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"text", "bin"}));
  tensor->add_flag("--chi", c.chi, "Write the bar-invariant normalization");

  auto* simple = app.add_subcommand("simple", "Simple-module character by bar-invariance descent");
  simple->add_option("--type", c.type, "Cartan type or adjacency file")->required();
  simple->add_option("--drinfeld", drinfeld, "Roots as i:k tokens")->required();
  simple->add_option("--threads", c.threads, "Worker threads")->check(CLI::Range(1u, 1024u));
  simple->add_option("--out", c.out, "Output file");

  auto* crystal = app.add_subcommand("crystal", "Monomial crystal of an l-fundamental module");
  crystal->add_option("--type", c.type, "Cartan type or adjacency file")->required();
  crystal->add_option("--node", node, "Fundamental node")->required();
  crystal->add_option("--check-against", check_against, "q-character file whose monomial set must match");
  crystal->add_option("--out", c.out, "Write the edge list here");
  crystal->add_option("--bound", bound, "Maximum number of crystal nodes");
  crystal->add_option("--convention", convention, "Operator convention")
      ->check(CLI::IsMember({"kashiwara", "largest_max"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*fund || *general) {
      auto data = load_type(c.type);
      EngineOptions opts;
      opts.max_depth = c.max_depth;
      opts.threads = c.threads;
      std::vector<std::string> warnings;
      opts.warnings = &warnings;
      if (mem_report) opts.progress = print_layer;
      if (*general) {
        opts.mode = tolerant ? EngineMode::tolerant : EngineMode::strict;
        auto q = compute_from_drinfeld(data, DrinfeldData::parse(drinfeld, data->rank()), opts);
        print_warnings(warnings);
        emit_qchar(c, q);
        return kOk;
      }
      if (node < 1 || node > data->rank()) throw InvalidArgument("node out of range");
      Monomial anchor = Monomial::y(node, 0);
      std::optional<QChar> partial;
      EngineState state;
      if (!resume.empty()) {
        auto [q, st] = load_checkpoint(resume);
        if (q.anchor() != anchor || q.data().name() != data->name())
          throw InvalidArgument("checkpoint belongs to a different run");
        partial = std::move(q);
        state = std::move(st);
        opts.resume = &state;
      }
      std::unique_ptr<TermSink> sink;
      CompactStore* store = nullptr;
      QCharBuilder* builder = nullptr;
      if (compact) {
        auto s = std::make_unique<CompactStore>(data, anchor);
        store = s.get();
        if (partial) replay(*partial, *s);
        sink = std::move(s);
      } else {
        auto b = partial ? std::make_unique<QCharBuilder>(std::move(*partial)) : std::make_unique<QCharBuilder>(data, anchor);
        builder = b.get();
        sink = std::move(b);
      }
      if (!checkpoint.empty()) {
        opts.checkpoint_every = checkpoint_every > 0 ? checkpoint_every : 10;
        opts.on_checkpoint = [&](const EngineState& st) {
          save_checkpoint(checkpoint, store ? store->to_qchar() : builder->result(), st);
          if (mem_report) std::cerr << "checkpoint at depth " << st.next_depth << '\n';
        };
      }
      run_engine(*data, anchor, opts, *sink);
      print_warnings(warnings);
      if (mem_report) {
        auto mu = current_memory_usage();
        std::cerr << "monomials " << (store ? store->size() : builder->result().size()) << " peak_kb " << mu.peak_rss_kb;
        if (store) std::cerr << " store_bytes " << store->memory_bytes();
        std::cerr << '\n';
      }
      emit_qchar(c, store ? store->to_qchar() : builder->take());
      return kOk;
    }

    if (*parse) {
      emit_qchar(c, load_input(in_path));
      return kOk;
    }

    if (*restrict_cmd || *decompose_cmd) {
      QChar q = load_input(in_path);
      ClassicalChar ch = restrict_qchar(q);
      if (*restrict_cmd) {
        if (table) {
          std::cout << "# weight | multiplicity\n";
          for (const auto& [w, p] : ch.terms()) std::cout << "# " << w.to_string() << " | " << p << '\n';
        }
        write_classical(std::cout, q.data(), ch);
        return kOk;
      }
      DecompositionTable t = decompose(q.data(), ch);
      if (table) {
        std::cout << "# irreducible | M(t)\n";
        for (const auto& [w, p] : t.rows) std::cout << "# " << w.to_string() << " | " << p << '\n';
      }
      write_decomposition(std::cout, t);
      return kOk;
    }

    if (*ic) {
      auto data = load_type(c.type);
      std::vector<Weight> ws;
      for (const auto& w : split_commas(weights)) ws.push_back(Weight::parse(w, data->rank()));
      EngineOptions opts;
      opts.threads = c.threads;
      ICResult r = ic_matrix(data, ws, opts);
      print_warnings(r.warnings);
      std::cout << "P(t):\n";
      write_aligned_matrix(std::cout, ws, r.P);
      std::cout << "\nIC(t):\n";
      write_aligned_matrix(std::cout, ws, r.IC);
      bool ok = true;
      for (std::size_t a = 0; a < ws.size(); ++a) {
        if (!r.freudenthal_ok[a]) {
          std::cerr << "freudenthal cross-check failed for " << ws[a].to_string() << '\n';
          ok = false;
        }
      }
      if (!c.out.empty()) {
        std::ofstream out(c.out);
        write_matrix_records(out, ws, r.IC);
      }
      if (!check_ic.empty()) {
        std::ifstream in(check_ic);
        if (!in) throw InvalidArgument("cannot open " + check_ic);
        auto [cols, m] = read_matrix_records(in, data->rank());
        bool match = cols == ws && m == r.IC;
        std::cout << (match ? "IC matches " : "IC differs from ") << check_ic << '\n';
        if (!match) return kMismatch;
      }
      return ok ? kOk : kMismatch;
    }

    if (*tensor) {
      std::vector<QChar> fs;
      for (const auto& f : split_commas(factors)) fs.push_back(load_qchar(f));
      if (fs.empty()) throw InvalidArgument("no factors given");
      try {
        emit_qchar(c, twisted_product(fs));
      } catch (const OrderViolation&) {
        std::vector<DrinfeldData> ds;
        for (const auto& f : fs) ds.push_back(DrinfeldData::from_monomial(f.anchor(), f.data().rank()));
        try {
          auto order = suggest_order(ds);
          std::cerr << "a valid factor order is";
          for (auto i : order) std::cerr << ' ' << i + 1;
          std::cerr << '\n';
        } catch (const OrderViolation&) {
        }
        throw;
      }
      return kOk;
    }

    if (*simple) {
      auto data = load_type(c.type);
      EngineOptions opts;
      opts.threads = c.threads;
      FundamentalCache cache(data, opts);
      KLResult r = kl_simple(cache, DrinfeldData::parse(drinfeld, data->rank()));
      if (c.out.empty()) {
        write_kl_result(std::cout, r);
      } else {
        std::ofstream out(c.out);
        write_kl_result(out, r);
      }
      return kOk;
    }

    if (*crystal) {
      auto data = load_type(c.type);
      if (node < 1 || node > data->rank()) throw InvalidArgument("node out of range");
      auto conv = convention == "kashiwara" ? CrystalConvention::kashiwara : CrystalConvention::largest_max;
      Crystal cr = generate_crystal(*data, Monomial::y(node, 0), bound, conv);
      if (!c.out.empty()) {
        std::ofstream out(c.out);
        write_crystal_edges(out, cr);
      } else if (check_against.empty()) {
        write_crystal_edges(std::cout, cr);
      }
      std::cerr << "crystal nodes " << cr.nodes.size() << " edges " << cr.edges.size() << '\n';
      if (!check_against.empty()) {
        QChar q = load_qchar(check_against);
        std::set<Monomial> a(cr.nodes.begin(), cr.nodes.end()), b;
        for (const auto& t : q.terms()) b.insert(t.monomial);
        bool match = a == b;
        std::cout << (match ? "match" : "mismatch") << ' ' << a.size() << ' ' << b.size() << '\n';
        return match ? kOk : kMismatch;
      }
      return kOk;
    }
  } catch (const AlgorithmStopped& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kAlgorithm;
  } catch (const AlgorithmFailed& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kAlgorithm;
  } catch (const OrderViolation& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kAlgorithm;
  } catch (const NoSolution& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kAlgorithm;
  } catch (const MissingStandard& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kAlgorithm;
  } catch (const NonInvariant& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kAlgorithm;
  } catch (const DepthGuardExceeded& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kResource;
  } catch (const BoundExceeded& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kResource;
  } catch (const std::bad_alloc&) {
    std::cerr << "error: out of memory\n";
    return kResource;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}

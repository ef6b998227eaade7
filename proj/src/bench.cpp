#include "pathlab/bench.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

#include "pathlab/numio.hpp"
#include "pathlab/rng.hpp"

namespace pathlab {

namespace {

struct SpecParser {
    std::string_view text;
    std::size_t pos = 0;

    void skip_ws() {
        while (pos < text.size() && text[pos] == ' ') ++pos;
    }

    bool consume(char c) {
        skip_ws();
        if (pos < text.size() && text[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }

    bool consume_word(std::string_view word) {
        skip_ws();
        if (text.substr(pos, word.size()) == word) {
            pos += word.size();
            return true;
        }
        return false;
    }

    [[noreturn]] void fail(const std::string& why) {
        throw Error(Errc::invalid_config,
                    "bad heuristic spec '" + std::string(text) + "': " + why);
    }

    int parse_int() {
        skip_ws();
        std::size_t start = pos;
        while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') ++pos;
        if (pos == start) fail("expected a number");
        int value = 0;
        for (std::size_t i = start; i < pos; ++i) value = value * 10 + (text[i] - '0');
        return value;
    }

    HeuristicSpec parse_term() {
        skip_ws();
        HeuristicSpec spec;
        if (consume_word("ZERO")) {
            spec.kind = HeuristicSpec::Kind::zero;
        } else if (consume_word("OCT")) {
            spec.kind = HeuristicSpec::Kind::octile;
        } else if (consume_word("MAN")) {
            spec.kind = HeuristicSpec::Kind::manhattan;
        } else if (consume_word("FM")) {
            spec.kind = HeuristicSpec::Kind::fastmap;
            if (!consume('(')) fail("FM needs (dims)");
            spec.param = parse_int();
            if (!consume(')')) fail("unclosed FM(");
            if (spec.param < 1) fail("FM needs at least 1 dimension");
        } else if (consume_word("DH")) {
            spec.kind = HeuristicSpec::Kind::differential;
            if (!consume('(')) fail("DH needs (pivots)");
            spec.param = parse_int();
            if (!consume(')')) fail("unclosed DH(");
            if (spec.param < 1) fail("DH needs at least 1 pivot");
        } else if (consume_word("MAX")) {
            spec.kind = HeuristicSpec::Kind::max;
            if (!consume('(')) fail("MAX needs (spec,spec)");
            spec.parts.push_back(parse_spec());
            if (!consume(',')) fail("MAX needs two comma-separated specs");
            spec.parts.push_back(parse_spec());
            if (!consume(')')) fail("unclosed MAX(");
        } else {
            fail("expected ZERO, OCT, MAN, FM(k), DH(p) or MAX(spec,spec)");
        }
        return spec;
    }

    HeuristicSpec parse_spec() {
        HeuristicSpec first = parse_term();
        if (!consume('+')) return first;
        HeuristicSpec combined;
        combined.kind = HeuristicSpec::Kind::max;
        combined.parts.push_back(std::move(first));
        do {
            combined.parts.push_back(parse_term());
        } while (consume('+'));
        return combined;
    }
};

} // namespace

HeuristicSpec parse_heuristic_spec(std::string_view text) {
    SpecParser parser{text};
    HeuristicSpec spec = parser.parse_spec();
    parser.skip_ws();
    if (parser.pos != text.size()) parser.fail("trailing characters");
    return spec;
}

std::string HeuristicSpec::label() const {
    switch (kind) {
    case Kind::zero:
        return "ZERO";
    case Kind::octile:
        return "OCT";
    case Kind::manhattan:
        return "MAN";
    case Kind::fastmap:
        return "FM(" + std::to_string(param) + ")";
    case Kind::differential:
        return "DH(" + std::to_string(param) + ")";
    case Kind::max: {
        std::string joined;
        for (const HeuristicSpec& part : parts) {
            if (!joined.empty()) joined += "+";
            joined += part.label();
        }
        return joined;
    }
    }
    return "?";
}

int HeuristicSpec::fm_dims() const {
    int dims = kind == Kind::fastmap ? param : 0;
    for (const HeuristicSpec& part : parts) dims = std::max(dims, part.fm_dims());
    return dims;
}

int HeuristicSpec::dh_pivots() const {
    int pivots = kind == Kind::differential ? param : 0;
    for (const HeuristicSpec& part : parts) pivots = std::max(pivots, part.dh_pivots());
    return pivots;
}

std::shared_ptr<const Heuristic> make_provider(const HeuristicSpec& spec,
                                               const ProviderContext& ctx) {
    switch (spec.kind) {
    case HeuristicSpec::Kind::zero:
        return std::make_shared<ZeroHeuristic>();
    case HeuristicSpec::Kind::octile:
        if (!ctx.cells) throw Error(Errc::invalid_config, "OCT requires a grid map");
        return std::make_shared<OctileHeuristic>(ctx.cells);
    case HeuristicSpec::Kind::manhattan:
        if (!ctx.cells) throw Error(Errc::invalid_config, "MAN requires a grid map");
        if (ctx.neighborhood != Neighborhood::Four) {
            throw Error(Errc::invalid_config,
                        "MAN is only admissible on four-neighbor grids");
        }
        return std::make_shared<ManhattanHeuristic>(ctx.cells);
    case HeuristicSpec::Kind::fastmap:
        if (!ctx.embedding) throw Error(Errc::invalid_config, "FM requires an embedding");
        return std::make_shared<FastMapHeuristic>(ctx.embedding, spec.param);
    case HeuristicSpec::Kind::differential:
        if (!ctx.pivots) throw Error(Errc::invalid_config, "DH requires a pivot table");
        return std::make_shared<DifferentialHeuristic>(ctx.pivots,
                                                       static_cast<std::size_t>(spec.param));
    case HeuristicSpec::Kind::max: {
        std::vector<std::shared_ptr<const Heuristic>> parts;
        parts.reserve(spec.parts.size());
        for (const HeuristicSpec& part : spec.parts) parts.push_back(make_provider(part, ctx));
        return max_combine(std::move(parts));
    }
    }
    throw Error(Errc::invalid_config, "unknown heuristic spec");
}

double median_of(std::vector<double> values) {
    if (values.empty()) return std::nan("");
    const std::size_t mid = values.size() / 2;
    std::nth_element(values.begin(), values.begin() + mid, values.end());
    double upper = values[mid];
    if (values.size() % 2 == 1) return upper;
    std::nth_element(values.begin(), values.begin() + (mid - 1), values.begin() + mid);
    return (values[mid - 1] + upper) / 2.0;
}

double mad_of(const std::vector<double>& values) {
    if (values.empty()) return std::nan("");
    const double med = median_of(values);
    std::vector<double> deviations;
    deviations.reserve(values.size());
    for (double v : values) deviations.push_back(std::abs(v - med));
    return median_of(std::move(deviations));
}

namespace {

int resolve_threads(int requested, int instances) {
    int threads = requested;
    if (threads <= 0) {
        if (const char* env = std::getenv("PATHLAB_THREADS")) {
            threads = std::atoi(env);
        }
    }
    if (threads <= 0) threads = static_cast<int>(std::thread::hardware_concurrency());
    if (threads <= 0) threads = 1;
    return std::max(1, std::min(threads, instances));
}

std::vector<std::uint32_t> component_ids(const WeightedGraph& g) {
    std::vector<std::uint32_t> comp(g.node_count(), 0);
    std::vector<char> seen(g.node_count(), 0);
    std::vector<NodeId> stack;
    std::uint32_t next = 0;
    for (NodeId s = 0; s < g.node_count(); ++s) {
        if (seen[s]) continue;
        ++next;
        stack.push_back(s);
        seen[s] = 1;
        while (!stack.empty()) {
            const NodeId u = stack.back();
            stack.pop_back();
            comp[u] = next;
            for (const WeightedGraph::Arc& arc : g.neighbors(u)) {
                if (!seen[arc.to]) {
                    seen[arc.to] = 1;
                    stack.push_back(arc.to);
                }
            }
        }
    }
    return comp;
}

// The classic equal-memory three-way comparison: FM(K), DH(K) and a
// max-hybrid whose parts add up to K. Winner bins are reported for this trio.
bool is_table_trio(const std::vector<HeuristicSpec>& specs) {
    if (specs.size() != 3) return false;
    const HeuristicSpec* fm = nullptr;
    const HeuristicSpec* dh = nullptr;
    const HeuristicSpec* hybrid = nullptr;
    for (const HeuristicSpec& s : specs) {
        if (s.kind == HeuristicSpec::Kind::fastmap && !fm) {
            fm = &s;
        } else if (s.kind == HeuristicSpec::Kind::differential && !dh) {
            dh = &s;
        } else if (s.kind == HeuristicSpec::Kind::max && s.parts.size() == 2 && !hybrid) {
            hybrid = &s;
        } else {
            return false;
        }
    }
    if (!fm || !dh || !hybrid || fm->param != dh->param) return false;
    const HeuristicSpec& a = hybrid->parts[0];
    const HeuristicSpec& b = hybrid->parts[1];
    const bool fm_dh = a.kind == HeuristicSpec::Kind::fastmap &&
                       b.kind == HeuristicSpec::Kind::differential;
    const bool dh_fm = a.kind == HeuristicSpec::Kind::differential &&
                       b.kind == HeuristicSpec::Kind::fastmap;
    return (fm_dh || dh_fm) && a.param + b.param == fm->param;
}

} // namespace

BenchReport run_bench(const GridMap& map, const BenchOptions& opt) {
    if (opt.instances < 1) throw Error(Errc::invalid_config, "instances must be at least 1");

    std::vector<HeuristicSpec> specs;
    for (const std::string& text : opt.heuristic_specs) {
        specs.push_back(parse_heuristic_spec(text));
    }
    if (opt.fm_dim_sweep) {
        const auto [lo, hi] = *opt.fm_dim_sweep;
        if (lo < 1 || hi < lo) throw Error(Errc::invalid_config, "bad FM dimension sweep");
        for (int k = lo; k <= hi; ++k) {
            HeuristicSpec spec;
            spec.kind = HeuristicSpec::Kind::fastmap;
            spec.param = k;
            specs.push_back(spec);
        }
    }
    if (specs.empty()) throw Error(Errc::invalid_config, "no heuristic specs given");

    GridGraph gg = grid_to_graph(map);
    const WeightedGraph& graph = gg.graph;
    if (graph.node_count() == 0) throw Error(Errc::empty_graph, "map has no passable cells");

    BenchReport report;
    report.node_count = graph.node_count();
    report.edge_count = graph.edge_count();

    int fm_dims = 0;
    int dh_pivots = 0;
    for (const HeuristicSpec& s : specs) {
        report.spec_labels.push_back(s.label());
        fm_dims = std::max(fm_dims, s.fm_dims());
        dh_pivots = std::max(dh_pivots, s.dh_pivots());
    }

    // One embedding / pivot table serves every FM(k) / DH(p) spec: greedy
    // construction makes smaller artifacts exact prefixes of larger ones.
    ProviderContext ctx;
    ctx.neighborhood = map.neighborhood;
    ctx.cells = std::make_shared<const std::vector<GridCell>>(gg.node_to_cell);
    if (fm_dims > 0) {
        EmbedConfig cfg;
        cfg.k_max = fm_dims;
        cfg.epsilon = opt.epsilon;
        cfg.tau = opt.tau;
        cfg.restarts = opt.restarts;
        cfg.seed = SplitMix64::derive(opt.seed, 1);
        auto embedding = std::make_shared<Embedding>(build_embedding(graph, cfg));
        for (const DimSpan& span : embedding->dim_spans) report.fm_spans.push_back(span.d_ab);
        if (embedding->k < fm_dims) {
            throw Error(Errc::invalid_config,
                        "embedding cutoff stopped at " + std::to_string(embedding->k) +
                            " dimensions but a spec needs " + std::to_string(fm_dims) +
                            "; lower --kmax or --epsilon");
        }
        ctx.embedding = std::move(embedding);
    }
    if (dh_pivots > 0) {
        ctx.pivots = std::make_shared<const PivotTable>(build_differential(
            graph, static_cast<std::size_t>(dh_pivots), SplitMix64::derive(opt.seed, 2)));
    }

    std::vector<std::shared_ptr<const Heuristic>> providers;
    for (const HeuristicSpec& s : specs) providers.push_back(make_provider(s, ctx));

    report.memory_units.reserve(providers.size());
    for (const auto& p : providers) report.memory_units.push_back(p->memory_units());
    report.equal_memory =
        std::all_of(report.memory_units.begin(), report.memory_units.end(),
                    [&](std::size_t m) { return m == report.memory_units.front(); });

    // Instance sampling: uniform over passable cells, resampling until the
    // pair is mutually reachable.
    const std::vector<std::uint32_t> comp = component_ids(graph);
    SplitMix64 inst_rng(SplitMix64::derive(opt.seed, 3));
    std::vector<std::pair<NodeId, NodeId>> instances;
    instances.reserve(static_cast<std::size_t>(opt.instances));
    for (int i = 0; i < opt.instances; ++i) {
        NodeId s;
        NodeId t;
        do {
            s = static_cast<NodeId>(inst_rng.below(graph.node_count()));
            t = static_cast<NodeId>(inst_rng.below(graph.node_count()));
        } while (comp[s] != comp[t]);
        instances.emplace_back(s, t);
    }

    report.rows.assign(instances.size(), InstanceRow{});
    std::atomic<std::size_t> next_instance{0};
    std::atomic<bool> failed{false};
    std::string failure_message;
    std::mutex failure_mutex;

    auto worker = [&]() {
        AStarEngine engine;
        for (;;) {
            const std::size_t i = next_instance.fetch_add(1);
            if (i >= instances.size() || failed.load()) break;
            const auto [s, t] = instances[i];
            InstanceRow& row = report.rows[i];
            row.start = gg.node_to_cell[s];
            row.goal = gg.node_to_cell[t];
            row.expanded.resize(providers.size());

            double cost = kInf;
            for (std::size_t h = 0; h < providers.size(); ++h) {
                const SearchResult result = engine.search(graph, s, t, *providers[h]);
                row.expanded[h] = result.expanded;
                if (h == 0) {
                    cost = result.cost;
                } else if (!(std::abs(result.cost - cost) <= 1e-9)) {
                    std::lock_guard<std::mutex> lock(failure_mutex);
                    failed.store(true);
                    failure_message = "cost mismatch on instance " + std::to_string(i) + ": " +
                                      report.spec_labels[0] + " found " + fmt_g17(cost) + ", " +
                                      report.spec_labels[h] + " found " + fmt_g17(result.cost) +
                                      " (a consistency bug)";
                    return;
                }
            }
            row.cost = cost;
        }
    };

    const int thread_count = resolve_threads(opt.threads, opt.instances);
    if (thread_count == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(thread_count));
        for (int t = 0; t < thread_count; ++t) pool.emplace_back(worker);
        for (std::thread& t : pool) t.join();
    }
    if (failed.load()) throw Error(Errc::cost_mismatch, failure_message);

    // Aggregates: median/MAD per spec and win counts (ties shared).
    std::vector<std::vector<double>> expansions(providers.size());
    std::vector<std::uint64_t> wins(providers.size(), 0);
    for (const InstanceRow& row : report.rows) {
        std::uint64_t best = row.expanded[0];
        for (std::uint64_t e : row.expanded) best = std::min(best, e);
        std::size_t winners = 0;
        for (std::size_t h = 0; h < providers.size(); ++h) {
            expansions[h].push_back(static_cast<double>(row.expanded[h]));
            if (row.expanded[h] == best) {
                ++wins[h];
                ++winners;
            }
        }
        if (winners > 1) ++report.tie_instances;
    }
    for (std::size_t h = 0; h < providers.size(); ++h) {
        SpecSummary s;
        s.label = report.spec_labels[h];
        s.memory_units = report.memory_units[h];
        s.median_expanded = median_of(expansions[h]);
        s.mad_expanded = mad_of(expansions[h]);
        s.wins = wins[h];
        report.summary.push_back(std::move(s));
    }

    if (is_table_trio(specs)) {
        for (std::size_t w = 0; w < providers.size(); ++w) {
            WinnerBin bin;
            bin.winner = report.spec_labels[w];
            std::vector<std::vector<double>> bin_exp(providers.size());
            for (const InstanceRow& row : report.rows) {
                std::uint64_t best = row.expanded[0];
                for (std::uint64_t e : row.expanded) best = std::min(best, e);
                if (row.expanded[w] != best) continue;
                ++bin.count;
                for (std::size_t h = 0; h < providers.size(); ++h) {
                    bin_exp[h].push_back(static_cast<double>(row.expanded[h]));
                }
            }
            for (std::size_t h = 0; h < providers.size(); ++h) {
                bin.median.push_back(median_of(bin_exp[h]));
                bin.mad.push_back(mad_of(bin_exp[h]));
            }
            report.winner_bins.push_back(std::move(bin));
        }
    }
    return report;
}

void write_csv(const BenchReport& report, std::ostream& out) {
    out << "instance,start_x,start_y,goal_x,goal_y,cost";
    for (const std::string& label : report.spec_labels) out << "," << label << "_expanded";
    out << "\n";
    for (std::size_t i = 0; i < report.rows.size(); ++i) {
        const InstanceRow& row = report.rows[i];
        out << i << "," << row.start.x << "," << row.start.y << "," << row.goal.x << ","
            << row.goal.y << "," << fmt_g17(row.cost);
        for (std::uint64_t e : row.expanded) out << "," << e;
        out << "\n";
    }
}

namespace {

std::string fmt_stat(double value) {
    if (std::isnan(value)) return "-";
    std::ostringstream os;
    os << value;
    return os.str();
}

} // namespace

std::string summary_text(const BenchReport& report) {
    std::ostringstream os;
    os << "nodes " << report.node_count << ", edges " << report.edge_count << ", instances "
       << report.rows.size() << "\n";
    os << "equal-memory comparison: " << (report.equal_memory ? "yes" : "no") << "\n";
    if (!report.fm_spans.empty()) {
        os << "fastmap spans:";
        for (double d : report.fm_spans) os << " " << d;
        os << "\n";
    }
    os << "heuristic        mem   median      MAD     wins\n";
    for (const SpecSummary& s : report.summary) {
        os << s.label;
        for (std::size_t pad = s.label.size(); pad < 17; ++pad) os << ' ';
        std::string mem = std::to_string(s.memory_units);
        os << mem;
        for (std::size_t pad = mem.size(); pad < 6; ++pad) os << ' ';
        std::string med = fmt_stat(s.median_expanded);
        os << med;
        for (std::size_t pad = med.size(); pad < 12; ++pad) os << ' ';
        std::string mad = fmt_stat(s.mad_expanded);
        os << mad;
        for (std::size_t pad = mad.size(); pad < 9; ++pad) os << ' ';
        os << s.wins << "\n";
    }
    os << "tied instances: " << report.tie_instances << "\n";
    for (const WinnerBin& bin : report.winner_bins) {
        os << bin.winner << "-WINS " << bin.count << ":";
        for (std::size_t h = 0; h < report.spec_labels.size(); ++h) {
            os << " " << report.spec_labels[h] << " med " << fmt_stat(bin.median[h]) << " mad "
               << fmt_stat(bin.mad[h]);
            if (h + 1 < report.spec_labels.size()) os << " |";
        }
        os << "\n";
    }
    return os.str();
}

} // namespace pathlab

#include "orbitvqc/datasets.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "orbitvqc/stategen.hpp"

namespace orbitvqc {

namespace {

constexpr double kRadius = 0.6; // synthetic2d class boundary

std::string fmt_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string fmt_amps(const std::vector<cplx>& amps) {
    std::string out;
    out.reserve(amps.size() * 40);
    for (std::size_t i = 0; i < amps.size(); ++i) {
        if (i) {
            out += ',';
        }
        out += fmt_double(amps[i].real());
        out += ',';
        out += fmt_double(amps[i].imag());
    }
    return out;
}

std::string fmt_ops(const std::vector<Gate1Q>& ops) {
    std::string out;
    for (std::size_t q = 0; q < ops.size(); ++q) {
        if (q) {
            out += '|';
        }
        const Mat2& m = ops[q].matrix();
        const cplx entries[4] = {m.m00, m.m01, m.m10, m.m11};
        for (int e = 0; e < 4; ++e) {
            if (e) {
                out += ',';
            }
            out += fmt_double(entries[e].real());
            out += ',';
            out += fmt_double(entries[e].imag());
        }
    }
    return out;
}

double parse_double(std::string_view text, const std::string& context) {
    double value = 0.0;
    const char* begin = text.data();
    const char* end = begin + text.size();
    auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc{} || ptr != end) {
        throw std::runtime_error(context + ": bad number '" + std::string(text) + "'");
    }
    return value;
}

std::vector<std::string_view> split(std::string_view text, char sep) {
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = text.find(sep, start);
        if (pos == std::string_view::npos) {
            parts.push_back(text.substr(start));
            return parts;
        }
        parts.push_back(text.substr(start, pos - start));
        start = pos + 1;
    }
}

std::vector<double> parse_doubles(std::string_view text, const std::string& context) {
    std::vector<double> out;
    for (std::string_view part : split(text, ',')) {
        out.push_back(parse_double(part, context));
    }
    return out;
}

void check_even(int m) {
    if (m < 2 || m % 2 != 0) {
        throw std::invalid_argument("sample count must be even and >= 2");
    }
}

void check_class(int class_id) {
    if (class_id < 1 || class_id > 6) {
        throw std::invalid_argument("class id must be in 1..6");
    }
}

// Uniform over the other five classes at class granularity, then uniform
// over that class's members.
std::uint32_t pick_opposition_graph(const GraphClassTable& table, int target,
                                    Rng& rng) {
    int cls = 1 + static_cast<int>(rng.uniform_index(5));
    if (cls >= target) {
        ++cls;
    }
    const auto& members = table.cls(cls).member_masks;
    return members[rng.uniform_index(members.size())];
}

std::uint32_t pick_class_graph(const GraphClassTable& table, int target, Rng& rng) {
    const auto& members = table.cls(target).member_masks;
    return members[rng.uniform_index(members.size())];
}

std::vector<Gate1Q> haar_local(int n, Rng& rng) {
    std::vector<Gate1Q> ops;
    ops.reserve(n);
    for (int q = 0; q < n; ++q) {
        ops.push_back(random_haar_u2(rng));
    }
    return ops;
}

} // namespace

Dataset build_graph_class_dataset(int class_id, int m, Rng rng) {
    check_class(class_id);
    check_even(m);
    const GraphClassTable& table = enumerate_four_qubit_classes();
    Dataset ds;
    ds.task = "graph-class/c" + std::to_string(class_id);
    ds.seed = rng.seed();
    ds.n_qubits = 4;
    ds.samples.reserve(m);
    for (int i = 0; i < m; ++i) {
        Rng r = rng.split(i);
        const bool negative = i < m / 2;
        const std::uint32_t mask = negative
                                       ? pick_class_graph(table, class_id, r)
                                       : pick_opposition_graph(table, class_id, r);
        Sample s;
        s.features = graph_state(Graph::from_edge_mask(4, mask)).amps();
        s.label = negative ? -1 : 1;
        s.provenance = "graph=" + std::to_string(mask);
        ds.samples.push_back(std::move(s));
    }
    return ds;
}

Dataset build_stabilizer_dataset(int class_id, int m, Rng rng) {
    check_class(class_id);
    check_even(m);
    const GraphClassTable& table = enumerate_four_qubit_classes();
    Dataset ds;
    ds.task = "stabilizer-orbit/c" + std::to_string(class_id);
    ds.seed = rng.seed();
    ds.n_qubits = 4;
    ds.samples.reserve(m);
    for (int i = 0; i < m; ++i) {
        Rng r = rng.split(i);
        const bool negative = i < m / 2;
        const std::uint32_t mask = negative
                                       ? pick_class_graph(table, class_id, r)
                                       : pick_opposition_graph(table, class_id, r);
        const std::vector<Gate1Q> ops = random_local_clifford(4, r);
        Sample s;
        s.features =
            apply_local_operator(graph_state(Graph::from_edge_mask(4, mask)), ops)
                .amps();
        s.label = negative ? -1 : 1;
        s.provenance = "graph=" + std::to_string(mask) + " ops=" + fmt_ops(ops);
        ds.samples.push_back(std::move(s));
    }
    return ds;
}

Dataset build_lu_orbit_dataset(int class_id, int m, Opposition opposition, Rng rng) {
    check_class(class_id);
    check_even(m);
    const GraphClassTable& table = enumerate_four_qubit_classes();
    Dataset ds;
    ds.task = "lu-orbit/c" + std::to_string(class_id) +
              (opposition == Opposition::FullHilbert ? "/vs-hilbert" : "/vs-orbits");
    ds.seed = rng.seed();
    ds.n_qubits = 4;
    ds.samples.reserve(m);
    for (int i = 0; i < m; ++i) {
        Rng r = rng.split(i);
        const bool negative = i < m / 2;
        Sample s;
        s.label = negative ? -1 : 1;
        if (!negative && opposition == Opposition::FullHilbert) {
            s.features = random_pure_state(4, r).amps();
        } else {
            const std::uint32_t mask =
                negative ? pick_class_graph(table, class_id, r)
                         : pick_opposition_graph(table, class_id, r);
            const std::vector<Gate1Q> ops = haar_local(4, r);
            s.features =
                apply_local_operator(graph_state(Graph::from_edge_mask(4, mask)), ops)
                    .amps();
            s.provenance = "graph=" + std::to_string(mask) + " ops=" + fmt_ops(ops);
        }
        ds.samples.push_back(std::move(s));
    }
    return ds;
}

Dataset build_three_qubit_dataset(const std::string& target,
                                  const std::string& opposition, int m, Rng rng) {
    check_even(m);
    const StateVector target_state = named_three_qubit_state(target); // validates
    const bool vs_hilbert = opposition == "full-hilbert";
    if (!vs_hilbert) {
        named_three_qubit_state(opposition);
        if (opposition == target) {
            throw std::invalid_argument("opposition must differ from the target");
        }
    }
    Dataset ds;
    ds.task = "three-qubit/" + target + "/vs-" + opposition;
    ds.seed = rng.seed();
    ds.n_qubits = 3;
    ds.samples.reserve(m);
    for (int i = 0; i < m; ++i) {
        Rng r = rng.split(i);
        const bool negative = i < m / 2;
        Sample s;
        s.label = negative ? -1 : 1;
        if (!negative && vs_hilbert) {
            s.features = random_pure_state(3, r).amps();
        } else {
            const std::string& name = negative ? target : opposition;
            const std::vector<Gate1Q> ops = haar_local(3, r);
            s.features =
                apply_local_operator(named_three_qubit_state(name), ops).amps();
            s.provenance = "state=" + name + " ops=" + fmt_ops(ops);
        }
        ds.samples.push_back(std::move(s));
    }
    return ds;
}

Dataset build_synthetic2d(int m, Rng rng) {
    check_even(m);
    Dataset ds;
    ds.task = "synthetic2d";
    ds.seed = rng.seed();
    ds.n_qubits = 2;
    ds.samples.reserve(m);
    for (int i = 0; i < m; ++i) {
        Rng r = rng.split(i);
        const bool negative = i < m / 2; // inside the disc
        double x = 0.0, y = 0.0;
        while (true) {
            x = r.uniform(-1.0, 1.0);
            y = r.uniform(-1.0, 1.0);
            const bool inside = x * x + y * y < kRadius * kRadius;
            if (inside == negative) {
                break;
            }
        }
        Sample s;
        s.label = negative ? -1 : 1;
        s.features = StateVector(2, {cplx(x, 0.0), cplx(y, 0.0), cplx(0.0, 0.0),
                                     cplx(0.25, 0.0)})
                         .amps();
        s.provenance = "x=" + fmt_double(x) + "," + fmt_double(y);
        ds.samples.push_back(std::move(s));
    }
    return ds;
}

std::pair<Dataset, Dataset> split_even(const Dataset& ds, Rng rng) {
    if (ds.size() < 2 || ds.size() % 2 != 0) {
        throw std::invalid_argument("split_even requires an even sample count");
    }
    std::vector<std::size_t> neg, pos;
    for (std::size_t i = 0; i < ds.size(); ++i) {
        (ds.samples[i].label < 0 ? neg : pos).push_back(i);
    }
    auto shuffle = [&rng](std::vector<std::size_t>& idx) {
        for (std::size_t i = idx.size(); i > 1; --i) {
            std::swap(idx[i - 1], idx[rng.uniform_index(i)]);
        }
    };
    shuffle(neg);
    shuffle(pos);

    // ceil for negatives, floor for positives, so halves stay equal even if
    // the per-label counts are odd.
    const std::size_t neg_train = (neg.size() + 1) / 2;
    const std::size_t pos_train = ds.size() / 2 - neg_train;

    Dataset train, test;
    train.task = ds.task + "/train";
    test.task = ds.task + "/test";
    train.seed = test.seed = ds.seed;
    train.n_qubits = test.n_qubits = ds.n_qubits;
    for (std::size_t i = 0; i < neg.size(); ++i) {
        (i < neg_train ? train : test).samples.push_back(ds.samples[neg[i]]);
    }
    for (std::size_t i = 0; i < pos.size(); ++i) {
        (i < pos_train ? train : test).samples.push_back(ds.samples[pos[i]]);
    }
    return {std::move(train), std::move(test)};
}

void save_dataset(const Dataset& ds, const std::string& path) {
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot open for writing: " + path);
    }
    out << "orbitvqc-dataset v1; n_qubits=" << ds.n_qubits << "; task=" << ds.task
        << "; seed=" << ds.seed << "; m=" << ds.size() << "\n";
    for (const Sample& s : ds.samples) {
        out << s.label << ';' << fmt_amps(s.features);
        if (!s.provenance.empty()) {
            out << ';' << s.provenance;
        }
        out << '\n';
    }
    if (!out) {
        throw std::runtime_error("write failed: " + path);
    }
}

Dataset load_dataset(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open dataset: " + path);
    }
    std::string line;
    if (!std::getline(in, line)) {
        throw std::runtime_error(path + ":1: missing header");
    }
    const auto fields = split(line, ';');
    if (fields.size() != 5 || fields[0] != "orbitvqc-dataset v1") {
        throw std::runtime_error(path + ":1: not an orbitvqc-dataset v1 header");
    }
    auto header_value = [&](std::size_t idx, std::string_view key) {
        std::string_view f = fields[idx];
        while (!f.empty() && f.front() == ' ') {
            f.remove_prefix(1);
        }
        if (f.substr(0, key.size()) != key || f.size() <= key.size() ||
            f[key.size()] != '=') {
            throw std::runtime_error(path + ":1: expected '" + std::string(key) +
                                     "=' in header");
        }
        return f.substr(key.size() + 1);
    };

    Dataset ds;
    ds.n_qubits = static_cast<int>(parse_double(header_value(1, "n_qubits"), path));
    ds.task = std::string(header_value(2, "task"));
    ds.seed = static_cast<std::uint64_t>(parse_double(header_value(3, "seed"), path));
    const std::size_t m =
        static_cast<std::size_t>(parse_double(header_value(4, "m"), path));
    if (ds.n_qubits < 1 || ds.n_qubits > 16) {
        throw std::runtime_error(path + ":1: bad n_qubits");
    }
    const std::size_t dim = std::size_t{1} << ds.n_qubits;

    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) {
            continue;
        }
        const std::string where = path + ":" + std::to_string(lineno);
        const std::size_t p1 = line.find(';');
        if (p1 == std::string::npos) {
            throw std::runtime_error(where + ": missing ';' after label");
        }
        const std::size_t p2 = line.find(';', p1 + 1);
        const std::string_view label_text = std::string_view(line).substr(0, p1);
        const std::string_view amps_text = std::string_view(line).substr(
            p1 + 1, (p2 == std::string::npos ? line.size() : p2) - p1 - 1);

        Sample s;
        if (label_text == "-1") {
            s.label = -1;
        } else if (label_text == "1" || label_text == "+1") {
            s.label = 1;
        } else {
            throw std::runtime_error(where + ": label must be -1 or 1, got '" +
                                     std::string(label_text) + "'");
        }
        const std::vector<double> values = parse_doubles(amps_text, where);
        if (values.size() != 2 * dim) {
            throw std::runtime_error(where + ": expected " + std::to_string(2 * dim) +
                                     " numbers, got " + std::to_string(values.size()));
        }
        s.features.reserve(dim);
        for (std::size_t i = 0; i < dim; ++i) {
            s.features.emplace_back(values[2 * i], values[2 * i + 1]);
        }
        if (std::abs(detail::norm_of(s.features) - 1.0) > 1e-10) {
            throw std::runtime_error(where + ": sample is not normalized");
        }
        if (p2 != std::string::npos) {
            s.provenance = line.substr(p2 + 1);
        }
        ds.samples.push_back(std::move(s));
    }
    if (ds.size() != m) {
        throw std::runtime_error(path + ": header promises " + std::to_string(m) +
                                 " samples, found " + std::to_string(ds.size()));
    }
    return ds;
}

bool stabilizer_amplitude_structure(const std::vector<cplx>& amps, double tol) {
    double max_mag = 0.0;
    for (const cplx& a : amps) {
        max_mag = std::max(max_mag, std::abs(a));
    }
    if (max_mag < tol) {
        return false;
    }
    std::size_t support = 0;
    cplx reference(0.0, 0.0);
    for (const cplx& a : amps) {
        const double mag = std::abs(a);
        if (mag > max_mag / 2.0) {
            ++support;
            if (reference == cplx(0.0, 0.0)) {
                reference = a;
            }
            if (std::abs(mag - max_mag) > tol) {
                return false; // non-uniform magnitude
            }
            const cplx ratio = a / reference;
            const bool phase_ok = std::abs(ratio - cplx(1, 0)) < tol ||
                                  std::abs(ratio - cplx(-1, 0)) < tol ||
                                  std::abs(ratio - cplx(0, 1)) < tol ||
                                  std::abs(ratio - cplx(0, -1)) < tol;
            if (!phase_ok) {
                return false;
            }
        } else if (mag > tol) {
            return false; // neither zero nor on-support
        }
    }
    return support > 0 && (support & (support - 1)) == 0;
}

std::vector<cplx> replay_provenance(const Sample& sample, int n_qubits) {
    if (sample.provenance.empty()) {
        throw std::runtime_error("sample has no provenance record");
    }
    std::string_view text = sample.provenance;
    const std::size_t ops_pos = text.find(" ops=");
    std::string_view head = text.substr(0, ops_pos);

    StateVector base = [&]() -> StateVector {
        if (head.substr(0, 6) == "graph=") {
            const double mask = parse_double(head.substr(6), "provenance");
            return graph_state(
                Graph::from_edge_mask(n_qubits, static_cast<std::uint32_t>(mask)));
        }
        if (head.substr(0, 6) == "state=") {
            return named_three_qubit_state(std::string(head.substr(6)));
        }
        throw std::runtime_error("unsupported provenance record: " +
                                 sample.provenance);
    }();

    if (ops_pos == std::string_view::npos) {
        return base.amps();
    }
    std::vector<Gate1Q> ops;
    for (std::string_view group : split(text.substr(ops_pos + 5), '|')) {
        const std::vector<double> v = parse_doubles(group, "provenance ops");
        if (v.size() != 8) {
            throw std::runtime_error("provenance op group needs 8 numbers");
        }
        ops.push_back(Gate1Q::unitary({cplx(v[0], v[1]), cplx(v[2], v[3]),
                                       cplx(v[4], v[5]), cplx(v[6], v[7])}));
    }
    return apply_local_operator(base, ops).amps();
}

} // namespace orbitvqc

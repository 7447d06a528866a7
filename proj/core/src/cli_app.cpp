#include "blobcalc/cli_app.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <fstream>
#include <sstream>

#include "blobcalc/blob_complex.hpp"
#include "blobcalc/coefficient_io.hpp"
#include "blobcalc/hochschild.hpp"
#include "blobcalc/hocolim.hpp"

namespace blobcalc {

namespace {

using nlohmann::ordered_json;

constexpr unsigned long long kDefaultMaxCells = 5'000'000ull;

struct ExitWith {
    int code;
    std::string message;  // printed to stderr
};

class Stopwatch {
public:
    Stopwatch() : start_(std::chrono::steady_clock::now()), last_(start_) {}
    long long lap() {
        auto now = std::chrono::steady_clock::now();
        auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(now - last_).count();
        last_ = now;
        return ms;
    }
    long long total() const {
        auto now = std::chrono::steady_clock::now();
        return std::chrono::duration_cast<std::chrono::milliseconds>(now - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_, last_;
};

CategoryPresentation load_coefficient(const std::string& source) {
    if (source.rfind("builtin:", 0) == 0) {
        try {
            return builtin_presentation(source.substr(8));
        } catch (const std::invalid_argument& e) {
            throw ExitWith{3, std::string("error: ") + e.what()};
        }
    }
    std::ifstream in(source);
    if (!in) throw ExitWith{3, "error: cannot read coefficient file '" + source + "'"};
    std::stringstream buf;
    buf << in.rdbuf();
    try {
        return parse_coefficient_json(buf.str());
    } catch (const CoefficientParseError& e) {
        throw ExitWith{3, "parse error at line " + std::to_string(e.line()) + ", column " +
                              std::to_string(e.column()) + ": " + e.what()};
    }
}

CategoryPresentation load_valid_coefficient(const std::string& source) {
    CategoryPresentation c = load_coefficient(source);
    std::vector<std::string> issues = validate(c);
    if (!issues.empty()) {
        std::string msg = "invalid coefficient presentation:";
        for (const auto& s : issues) msg += "\n  " + s;
        throw ExitWith{2, msg};
    }
    return c;
}

OneManifold parse_manifold_arg(const std::string& literal, int points) {
    OneManifold w;
    try {
        w = OneManifold::parse(literal, points > 0 ? std::optional<int>(points) : std::nullopt);
    } catch (const std::invalid_argument& e) {
        throw ExitWith{1, std::string("error: ") + e.what()};
    }
    // The decomposition poset has ~2^slots objects; refuse before
    // enumerating anything that cannot possibly fit under a cap.
    for (const Component& c : w.components)
        if (c.points > 16)
            throw ExitWith{4, "resource cap exceeded: components with more than 16 points "
                              "are outside the supported desk scale"};
    return w;
}

BoundaryCondition parse_boundary(const std::string& text, const OneManifold& w,
                                 const CategoryPresentation& c) {
    BoundaryCondition bc;
    if (text == "-") return bc;  // option absent
    if (text.empty()) {
        // bare --fix-boundary: pin every interval boundary to the first object
        for (int ci = 0; ci < static_cast<int>(w.components.size()); ++ci)
            if (w.components[ci].kind == Component::Kind::Interval) bc.fixed[ci] = {0, 0};
        return bc;
    }
    // "OBJ" fixes every interval boundary to OBJ; "L0,R0[,L1,R1,...]" fixes
    // per-interval pairs in component order.
    std::vector<std::string> parts;
    std::string cur;
    for (char ch : text) {
        if (ch == ',') {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    parts.push_back(cur);
    auto obj = [&](const std::string& name) {
        auto o = c.object_index(name);
        if (!o) throw ExitWith{1, "error: unknown object '" + name + "' in --fix-boundary"};
        return *o;
    };
    std::vector<int> intervals;
    for (int ci = 0; ci < static_cast<int>(w.components.size()); ++ci)
        if (w.components[ci].kind == Component::Kind::Interval) intervals.push_back(ci);
    if (parts.size() == 1) {
        int o = obj(parts[0]);
        for (int ci : intervals) bc.fixed[ci] = {o, o};
    } else if (parts.size() == 2 * intervals.size()) {
        for (std::size_t i = 0; i < intervals.size(); ++i)
            bc.fixed[intervals[i]] = {obj(parts[2 * i]), obj(parts[2 * i + 1])};
    } else {
        throw ExitWith{1, "error: --fix-boundary needs one object or one pair per interval"};
    }
    return bc;
}

void guard_cells(const std::vector<unsigned long long>& per_degree, unsigned long long cap) {
    for (std::size_t k = 0; k < per_degree.size(); ++k)
        if (per_degree[k] > cap)
            throw ExitWith{4, "resource cap exceeded: degree " + std::to_string(k) +
                                  " needs an ambient dimension of about " +
                                  std::to_string(per_degree[k]) + " (cap " + std::to_string(cap) +
                                  "; raise with --max-cells)"};
}

ordered_json betti_json(const std::vector<Index>& dims) {
    ordered_json betti = ordered_json::object();
    for (std::size_t k = 0; k < dims.size(); ++k) betti[std::to_string(k)] = dims[k];
    return betti;
}

std::string render_pretty_betti(const ordered_json& report) {
    std::ostringstream out;
    out << "coefficients : " << report["coeff"].get<std::string>() << " over "
        << report["field"].get<std::string>() << "\n";
    out << "manifold     : " << report["manifold"].get<std::string>() << " (" <<
        report["points"].get<int>() << " points)\n";
    out << "model        : " << report["model"].get<std::string>() << "\n";
    out << "degree  dim H_k\n";
    for (const auto& [k, v] : report["betti"].items())
        out << "  " << k << "     " << v.get<Index>() << "\n";
    return out.str();
}

struct CommonReport {
    ordered_json doc;
    void finish(CliResult& result, bool pretty) {
        if (pretty)
            result.out = render_pretty_betti(doc);
        else
            result.out = doc.dump(2) + "\n";
    }
};

}  // namespace

CliResult run_cli(const std::vector<std::string>& args) {
    CLI::App app{"blobcalc: exact homology engine for blob complexes of 1-manifolds"};
    app.require_subcommand(1);

    // validate
    std::string validate_path;
    CLI::App* cmd_validate = app.add_subcommand("validate", "check a coefficient file");
    cmd_validate->add_option("file", validate_path, "coefficient JSON file")->required();

    // algebra builtin <name>
    std::string builtin_name;
    CLI::App* cmd_algebra = app.add_subcommand("algebra", "coefficient presentation utilities");
    CLI::App* cmd_builtin = cmd_algebra->add_subcommand("builtin", "emit a builtin presentation");
    cmd_builtin->add_option("name", builtin_name, "ground | trunc-poly:k | group:Z/n | matrix:n, optional @Fp")
        ->required();

    // homology
    std::string h_coeff, h_manifold, h_model = "blob", h_boundary = "-";
    int h_points = 0;
    int h_maxdeg = 2;
    unsigned long long h_cap = kDefaultMaxCells;
    bool h_pretty = false;
    CLI::App* cmd_homology = app.add_subcommand("homology", "per-degree homology dimensions");
    cmd_homology->add_option("--coeff", h_coeff, "coefficient file or builtin:<name>")->required();
    cmd_homology->add_option("--manifold", h_manifold, "e.g. circle:3, interval:2+circle:2")
        ->required();
    cmd_homology->add_option("--points", h_points, "point count for bare circle/interval literals");
    cmd_homology->add_option("--model", h_model, "blob | hocolim | colimit | hochschild");
    cmd_homology->add_option("--max-degree", h_maxdeg,
                             "build complexes through this degree; homology is reported in "
                             "degrees below it");
    cmd_homology->add_option("--fix-boundary", h_boundary,
                             "fix interval boundary objects (object, or L,R per interval)")
        ->expected(0, 1)
        ->default_str("");
    cmd_homology->add_option("--max-cells", h_cap, "ambient dimension cap per degree");
    cmd_homology->add_flag("--pretty", h_pretty, "human-readable table instead of JSON");

    // compare
    std::string c_coeff, c_manifold = "circle";
    int c_points = 0;
    int c_maxdeg = 1;
    unsigned long long c_cap = kDefaultMaxCells;
    bool c_pretty = false;
    CLI::App* cmd_compare =
        app.add_subcommand("compare", "blob vs hocolim vs Hochschild dimensions on a circle");
    cmd_compare->add_option("--coeff", c_coeff)->required();
    cmd_compare->add_option("--manifold", c_manifold, "must be a single circle");
    cmd_compare->add_option("--points", c_points)->required();
    cmd_compare->add_option("--max-degree", c_maxdeg, "largest compared degree");
    cmd_compare->add_option("--max-cells", c_cap);
    cmd_compare->add_flag("--pretty", c_pretty);

    // sweep
    std::string s_coeff, s_points = "2..5", s_model = "hocolim";
    int s_maxdeg = 2;
    unsigned long long s_cap = kDefaultMaxCells;
    bool s_pretty = false;
    CLI::App* cmd_sweep =
        app.add_subcommand("sweep", "stabilization of circle homology against the oracle");
    cmd_sweep->add_option("--coeff", s_coeff)->required();
    cmd_sweep->add_option("--points", s_points, "range Nmin..Nmax, e.g. 2..5");
    cmd_sweep->add_option("--model", s_model, "hocolim | blob");
    cmd_sweep->add_option("--max-degree", s_maxdeg,
                          "build through this degree, report degrees below it");
    cmd_sweep->add_option("--max-cells", s_cap);
    cmd_sweep->add_flag("--pretty", s_pretty);

    CliResult result{0, "", ""};
    std::vector<std::string> argv_rev(args.rbegin(), args.rend());
    try {
        app.parse(argv_rev);
    } catch (const CLI::ParseError& e) {
        std::ostringstream out, err;
        int code = app.exit(e, out, err);
        result.exit_code = code;
        result.out = out.str();
        result.err = err.str();
        return result;
    }

    Stopwatch watch;
    try {
        if (*cmd_validate) {
            CategoryPresentation c = load_coefficient(validate_path);
            std::vector<std::string> issues = validate(c);
            if (issues.empty()) {
                result.out = "ok: " + c.name() + " is a valid presentation\n";
            } else {
                result.exit_code = 2;
                result.err = "invalid coefficient presentation:\n";
                for (const auto& s : issues) result.err += "  " + s + "\n";
            }
            return result;
        }
        if (*cmd_algebra) {
            if (!*cmd_builtin) throw ExitWith{1, "error: expected 'algebra builtin <name>'"};
            CategoryPresentation c = builtin_presentation(builtin_name);
            result.out = serialize_coefficient_json(c);
            return result;
        }
        if (*cmd_homology) {
            CategoryPresentation c = load_valid_coefficient(h_coeff);
            OneManifold w = parse_manifold_arg(h_manifold, h_points);
            BoundaryCondition bc = parse_boundary(h_boundary, w, c);
            long long parse_ms = watch.lap();
            if (h_maxdeg < 1) throw ExitWith{1, "error: --max-degree must be >= 1"};
            Index top = static_cast<Index>(h_maxdeg);
            std::vector<Index> dims;
            if (h_model == "blob") {
                guard_cells(blob_ambient_estimate(w, c, top, bc), h_cap);
                BlobComplexResult r = build_blob_complex(w, c, top, bc);
                dims = r.complex.homology_dimensions();
                dims.resize(top);  // degrees 0..top-1 are trustworthy
            } else if (h_model == "hocolim") {
                guard_cells(hocolim_ambient_estimate(w, c, top, bc), h_cap);
                dims = hocolim_complex(w, c, top, bc).complex.homology_dimensions();
                dims.resize(top);
            } else if (h_model == "colimit") {
                guard_cells(hocolim_ambient_estimate(w, c, 0, bc), h_cap);
                dims = {ordinary_colimit(w, c, bc).dimension};
            } else if (h_model == "hochschild") {
                if (w.components.size() != 1 ||
                    w.components[0].kind != Component::Kind::Circle)
                    throw ExitWith{1, "error: model hochschild needs a single circle"};
                dims = hochschild_dims(c, top - 1);
            } else {
                throw ExitWith{1, "error: unknown model '" + h_model + "'"};
            }
            long long build_ms = watch.lap();

            CommonReport rep;
            rep.doc["command"] = "homology --coeff " + h_coeff + " --manifold " + w.to_literal() +
                                 " --model " + h_model + " --max-degree " + std::to_string(h_maxdeg);
            rep.doc["coeff"] = c.name();
            rep.doc["coeff_hash"] = coefficient_hash(c);
            rep.doc["field"] = c.field().to_string();
            rep.doc["manifold"] = w.to_literal();
            rep.doc["points"] = w.total_points();
            rep.doc["model"] = h_model;
            rep.doc["max_degree"] = h_maxdeg;
            rep.doc["betti"] = betti_json(dims);
            rep.doc["timings_ms"] = {{"parse", parse_ms}, {"build", build_ms},
                                     {"total", watch.total()}};
            rep.doc["version"] = kEngineVersion;
            rep.finish(result, h_pretty);
            return result;
        }
        if (*cmd_compare) {
            CategoryPresentation c = load_valid_coefficient(c_coeff);
            OneManifold w = parse_manifold_arg(c_manifold, c_points);
            if (w.components.size() != 1 || w.components[0].kind != Component::Kind::Circle)
                throw ExitWith{1, "error: compare needs a single circle"};
            int n = w.components[0].points;
            if (c_maxdeg >= n)
                result.err += "warning: max degree " + std::to_string(c_maxdeg) +
                              " >= points " + std::to_string(n) +
                              "; the carrier truncation may not have converged\n";
            long long parse_ms = watch.lap();
            Index top = static_cast<Index>(c_maxdeg);
            guard_cells(blob_ambient_estimate(w, c, top + 1), c_cap);
            guard_cells(hocolim_ambient_estimate(w, c, top + 1), c_cap);
            ModelComparison cmp = compare_models(w, c, top);
            std::vector<Index> hh = hochschild_dims(c, top);
            bool all_equal = cmp.equal && cmp.blob_dims == hh;
            long long build_ms = watch.lap();

            ordered_json doc;
            doc["command"] = "compare --coeff " + c_coeff + " --manifold " + w.to_literal() +
                             " --max-degree " + std::to_string(c_maxdeg);
            doc["coeff"] = c.name();
            doc["coeff_hash"] = coefficient_hash(c);
            doc["field"] = c.field().to_string();
            doc["manifold"] = w.to_literal();
            doc["points"] = n;
            doc["model"] = "compare";
            doc["max_degree"] = c_maxdeg;
            doc["betti"] = {{"blob", betti_json(cmp.blob_dims)},
                            {"hocolim", betti_json(cmp.hocolim_dims)},
                            {"hochschild", betti_json(hh)}};
            ordered_json by_degree = ordered_json::object();
            for (std::size_t k = 0; k < cmp.blob_dims.size(); ++k)
                by_degree[std::to_string(k)] =
                    cmp.blob_dims[k] == cmp.hocolim_dims[k] && cmp.blob_dims[k] == hh[k];
            doc["equal_by_degree"] = by_degree;
            doc["equal"] = all_equal;
            doc["timings_ms"] = {{"parse", parse_ms}, {"build", build_ms},
                                 {"total", watch.total()}};
            doc["version"] = kEngineVersion;
            if (c_pretty) {
                std::ostringstream out;
                out << "degree  blob  hocolim  hochschild\n";
                for (std::size_t k = 0; k < cmp.blob_dims.size(); ++k)
                    out << "  " << k << "     " << cmp.blob_dims[k] << "     "
                        << cmp.hocolim_dims[k] << "        " << hh[k] << "\n";
                out << (all_equal ? "all models agree\n" : "MISMATCH\n");
                result.out = out.str();
            } else {
                result.out = doc.dump(2) + "\n";
            }
            if (!all_equal) result.exit_code = 5;
            return result;
        }
        if (*cmd_sweep) {
            CategoryPresentation c = load_valid_coefficient(s_coeff);
            auto dots = s_points.find("..");
            if (dots == std::string::npos)
                throw ExitWith{1, "error: --points needs a range Nmin..Nmax"};
            int n_min = std::stoi(s_points.substr(0, dots));
            int n_max = std::stoi(s_points.substr(dots + 2));
            if (n_max < 3) throw ExitWith{1, "error: sweep needs Nmax >= 3"};
            SweepModel model;
            if (s_model == "hocolim")
                model = SweepModel::Hocolim;
            else if (s_model == "blob")
                model = SweepModel::Blob;
            else
                throw ExitWith{1, "error: unknown sweep model '" + s_model + "'"};
            long long parse_ms = watch.lap();
            Index top = static_cast<Index>(s_maxdeg);
            for (int n = n_min; n <= n_max; ++n) {
                OneManifold w{{{Component::Kind::Circle, n}}};
                guard_cells(model == SweepModel::Hocolim ? hocolim_ambient_estimate(w, c, top)
                                                         : blob_ambient_estimate(w, c, top),
                            s_cap);
            }
            StabilizationSweep sweep = stabilization_sweep(n_min, n_max, c, top, model);
            long long build_ms = watch.lap();

            ordered_json doc;
            doc["command"] = "sweep --coeff " + s_coeff + " --points " + s_points + " --model " +
                             s_model + " --max-degree " + std::to_string(s_maxdeg);
            doc["coeff"] = c.name();
            doc["coeff_hash"] = coefficient_hash(c);
            doc["field"] = c.field().to_string();
            doc["manifold"] = "circle";
            doc["points"] = s_points;
            doc["model"] = s_model;
            doc["max_degree"] = s_maxdeg;
            ordered_json rows = ordered_json::array();
            for (std::size_t i = 0; i < sweep.points.size(); ++i)
                rows.push_back({{"points", sweep.points[i]}, {"betti", betti_json(sweep.dims[i])}});
            doc["sweep"] = rows;
            ordered_json conv = ordered_json::object();
            for (std::size_t d = 0; d < sweep.converged.size(); ++d)
                conv[std::to_string(d)] = {{"converged", static_cast<bool>(sweep.converged[d])},
                                           {"value", sweep.stabilized[d]},
                                           {"oracle", sweep.oracle[d]}};
            doc["converged"] = conv;
            doc["oracle_match"] = sweep.oracle_match;
            doc["timings_ms"] = {{"parse", parse_ms}, {"build", build_ms},
                                 {"total", watch.total()}};
            doc["version"] = kEngineVersion;
            if (s_pretty) {
                std::ostringstream out;
                out << "N";
                for (std::size_t d = 0; d < sweep.converged.size(); ++d) out << "  H_" << d;
                out << "\n";
                for (std::size_t i = 0; i < sweep.points.size(); ++i) {
                    out << sweep.points[i];
                    for (Index v : sweep.dims[i]) out << "    " << v;
                    out << "\n";
                }
                out << "oracle";
                for (Index v : sweep.oracle) out << "  " << v;
                out << "\n";
                result.out = out.str();
            } else {
                result.out = doc.dump(2) + "\n";
            }
            return result;
        }
    } catch (const ExitWith& e) {
        result.exit_code = e.code;
        result.err += e.message + "\n";
        return result;
    } catch (const std::exception& e) {
        result.exit_code = 1;
        result.err += std::string("error: ") + e.what() + "\n";
        return result;
    }
    result.exit_code = 1;
    result.err = "error: no command\n";
    return result;
}

}  // namespace blobcalc

// valdyn: valuative dynamics of plane polynomial maps.
//
// Every run is a pure function of (map file, flags, seed): fixed seeds,
// ordered containers, and exact arithmetic make identical invocations
// byte-identical.

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "valdyn/valdyn.hpp"

using namespace valdyn;

namespace {

PolyMap load_map(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("IO", "cannot open map file " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_map(ss.str());
}

// "--weights p/q" names the monomial valuation nu(x) = -p/q, nu(y) = -1
ValInfinity weights_valuation(const std::string& arg) {
    Rat s = Rat::parse(arg);
    return ValInfinity::monomial(QuadReal(-s), QuadReal(-1));
}

uint64_t pick_seed(const CLI::Option* opt, uint64_t flag_value) {
    if (opt->count() > 0) return flag_value;
    if (const char* env = std::getenv("VALDYN_SEED")) return std::strtoull(env, nullptr, 10);
    return kDefaultSeed;
}

std::string fmt12(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::fputs(text.c_str(), stdout);
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw Error("IO", "cannot open output file " + out_path);
    out << text;
}

std::string degrees_line(const std::vector<BigInt>& degs) {
    std::string line;
    for (std::size_t i = 0; i < degs.size(); ++i) line += (i ? " " : "") + degs[i].to_string();
    return line + "\n";
}

std::string eigen_report(const EigenReport& r) {
    std::string out = "kind=" + r.kind_str() + " nu(x)=" + r.nu_star.nu_x().to_string() +
                      " nu(y)=" + r.nu_star.nu_y().to_string() +
                      " lambda1=" + r.lambda1.to_string() + "\n";
    out += "nu_star = " + r.nu_star.render() + "\n";
    auto mp = r.lambda1.min_poly();
    out += "lambda1_minpoly = " + mp.str() + (mp.integer ? " (integer)" : " (non-integer)") + "\n";
    out += std::string("exact = ") + (r.exact ? "true" : "false") + "\n";
    out += "iterations = " + std::to_string(r.iterations) + "\n";
    if (r.kind == EigenKind::InfinitelySingularTruncated)
        out += "truncation_depth = " + std::to_string(r.truncation_depth) + "\n";
    return out;
}

std::string recur_line(const Recurrence& r) {
    std::string out = "order=" + std::to_string(r.order) + " coeffs=";
    for (int i = 0; i < r.order; ++i)
        out += (i ? "," : "") + r.coeffs[static_cast<std::size_t>(i)].to_string();
    out += " lambda1=" + r.dominant_root.to_string();
    if (r.offset > 0) out += " offset=" + std::to_string(r.offset);
    return out + "\n";
}

std::string classification_report(const Classification& c) {
    std::string out;
    out += "lambda1 = " + c.lambda1.to_string() + "\n";
    out += "lambda2 = " + std::to_string(c.lambda2) + "\n";
    out += "lambda1_minpoly = " + c.lambda1.min_poly().str() + "\n";
    out += "branch = " + c.branch_str() + "\n";
    out += "degrees = " + degrees_line(c.degrees);
    out += "recurrence = " + c.recurrence.recurrence_str() + "\n";
    out += "eigen_kind = " + c.eigen.kind_str() + "\n";
    out += "eigen = " + c.eigen.nu_star.render() + "\n";
    if (c.branch == Branch::C1Skew)
        out += std::string("skew_form = ") + (c.skew_form ? "true" : "false") + "\n";
    if (c.branch == Branch::C2Toric) {
        out += "toric_rays =";
        for (auto& r : c.toric_rays)
            out += " (" + r.first.to_string() + "," + r.second.to_string() + ")";
        out += "\n";
        out += std::string("extends_P2 = ") + (c.extends_P2 ? "true" : "false") + "\n";
    }
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"valuative dynamics of dominant polynomial maps of the affine plane"};
    app.require_subcommand(1);
    app.fallthrough();  // --seed / --out may follow the subcommand

    std::string map_path, out_path, weights = "1";
    uint64_t seed = kDefaultSeed;
    auto* seed_opt = app.add_option("--seed", seed, "seed for randomized subroutines");
    app.add_option("--out", out_path, "write the report to a file instead of stdout");

    int n = 6, max_order = 4, bound = 20, max_refine = 32, n_max = 40, resolution = 64;
    long long pw = 1, qw = 1;
    bool bruteforce = false;
    double gx = 0, gy = 0, lambda1_flag = 0, tol = 1e-9, eps = 0.5, gmax = -1, lambda2_flag = -1;
    std::vector<double> window{-3, 3, -3, 3};
    std::string pgm_path;

    auto add_map = [&](CLI::App* cmd) {
        cmd->add_option("map", map_path, "map file (grammar: P = ...; Q = ...)")->required();
    };

    auto* c_degrees = app.add_subcommand("degrees", "degree growth sequence deg(F^j)");
    c_degrees->add_option("--n", n, "number of iterates");
    c_degrees->add_flag("--bruteforce", bruteforce, "use literal compositions");
    c_degrees->add_option("--max-refine", max_refine, "pushforward refinement bound");
    add_map(c_degrees);

    auto* c_recur = app.add_subcommand("recur", "integral linear recursion of the degrees");
    c_recur->add_option("--n", n, "number of iterates");
    c_recur->add_option("--max-order", max_order, "largest recursion order searched");
    add_map(c_recur);

    auto* c_eigen = app.add_subcommand("eigen", "eigenvaluation and asymptotic degree");
    add_map(c_eigen);

    auto* c_lambda2 = app.add_subcommand("lambda2", "topological degree");
    add_map(c_lambda2);

    std::string conj_path, conj_inv_path;
    auto* c_classify = app.add_subcommand("classify", "degree-growth classification");
    c_classify->add_option("--conjugate", conj_path,
                           "map file G; analyze Ginv o F o G instead of F");
    c_classify->add_option("--conjugate-inverse", conj_inv_path,
                           "map file Ginv with Ginv o G = id (required with --conjugate)");
    add_map(c_classify);

    auto* c_inv = app.add_subcommand("invariants", "skewness, thinness, multiplicity");
    c_inv->add_option("--weights", weights, "monomial valuation nu(x) = -p/q, nu(y) = -1");
    add_map(c_inv);

    auto* c_push = app.add_subcommand("push", "pushforward of a monomial valuation");
    c_push->add_option("--weights", weights, "monomial valuation nu(x) = -p/q, nu(y) = -1");
    c_push->add_option("--max-refine", max_refine, "refinement bound");
    add_map(c_push);

    auto* c_jac = app.add_subcommand("jacobian-check", "A(v) + v(JF) = d(F,v) A(F.v)");
    c_jac->add_option("--weights", weights, "monomial valuation nu(x) = -p/q, nu(y) = -1");
    add_map(c_jac);

    auto* c_ext = app.add_subcommand("extends", "weighted projective extension test");
    c_ext->add_option("--p", pw, "weight p")->required();
    c_ext->add_option("--q", qw, "weight q")->required();
    add_map(c_ext);

    auto* c_wit = app.add_subcommand("witness", "search for d(F, v) = 0");
    c_wit->add_option("--bound", bound, "denominator bound");
    add_map(c_wit);

    auto* c_blow = app.add_subcommand("blowup", "blowup chain realizing a monomial valuation");
    c_blow->add_option("--weights", weights, "monomial valuation nu(x) = -p/q, nu(y) = -1");
    add_map(c_blow);

    auto* c_green = app.add_subcommand("green", "numerical Green function");
    c_green->require_subcommand(1);
    auto* g_value = c_green->add_subcommand("value", "estimate at one point");
    g_value->add_option("--x", gx, "x coordinate")->required();
    g_value->add_option("--y", gy, "y coordinate")->required();
    g_value->add_option("--lambda1", lambda1_flag, "asymptotic degree (default: computed)");
    g_value->add_option("--n-max", n_max, "iteration bound");
    g_value->add_option("--tol", tol, "convergence tolerance");
    add_map(g_value);
    auto* g_grid = c_green->add_subcommand("grid", "raster over a real window");
    g_grid->add_option("--window", window, "x0 x1 y0 y1")->expected(4);
    g_grid->add_option("--resolution", resolution, "samples per axis");
    g_grid->add_option("--lambda1", lambda1_flag, "asymptotic degree (default: computed)");
    g_grid->add_option("--n-max", n_max, "iteration bound");
    g_grid->add_option("--tol", tol, "convergence tolerance");
    g_grid->add_option("--pgm", pgm_path, "also write an 8-bit graymap");
    g_grid->add_option("--gmax", gmax, "graymap clamp (default: observed max)");
    add_map(g_grid);
    auto* g_bound = c_green->add_subcommand("bound", "growth bound table on K+");
    g_bound->add_option("--x", gx, "x coordinate")->required();
    g_bound->add_option("--y", gy, "y coordinate")->required();
    g_bound->add_option("--lambda1", lambda1_flag, "asymptotic degree (default: computed)");
    g_bound->add_option("--lambda2", lambda2_flag, "topological degree (default: computed)");
    g_bound->add_option("--eps", eps, "epsilon in the growth bound");
    g_bound->add_option("--n-max", n_max, "iteration bound");
    add_map(g_bound);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        uint64_t the_seed = pick_seed(seed_opt, seed);
        PolyMap F = load_map(map_path);
        std::string out;

        auto lambda1_of = [&](double flag) {
            if (flag > 0) return flag;
            auto [degs, rec] = degrees_with_recurrence(F);
            (void)degs;
            return rec.dominant_root.to_double();
        };

        if (*c_degrees) {
            std::vector<BigInt> degs = bruteforce ? degree_sequence_bruteforce(F, n)
                                                  : degree_sequence(F, n, max_refine);
            out = degrees_line(degs);
        } else if (*c_recur) {
            std::vector<BigInt> degs = degree_sequence(F, n);
            out = recur_line(detect_recurrence(degs, max_order));
        } else if (*c_eigen) {
            out = eigen_report(eigenvaluation(F));
        } else if (*c_lambda2) {
            out = "lambda2 = " + std::to_string(topological_degree(F, the_seed)) + "\n";
        } else if (*c_classify) {
            if (!conj_path.empty()) {
                if (conj_inv_path.empty())
                    throw Error("BadArgument", "--conjugate needs --conjugate-inverse");
                PolyMap G = load_map(conj_path);
                PolyMap Ginv = load_map(conj_inv_path);
                PolyMap check = compose(Ginv, G);
                if (check.P != BiPoly::var_x() || check.Q != BiPoly::var_y())
                    throw Error("BadArgument", "Ginv o G is not the identity");
                F = compose(Ginv, compose(F, G));
            }
            out = classification_report(classify(F, the_seed));
        } else if (*c_inv) {
            ValInfinity v = weights_valuation(weights);
            TreeInvariants iv = invariants(v);
            out += "alpha = " + iv.alpha.to_string() + "\n";
            out += "thinness = " + iv.thinness.to_string() + "\n";
            out += "multiplicity = " + std::to_string(iv.multiplicity) + "\n";
            out += std::string("in_V1 = ") + (in_V1(v) ? "true" : "false") + "\n";
            out += std::string("rational_pencil = ") + (is_rational_pencil(v) ? "true" : "false") + "\n";
            out += std::string("monomializable = ") + (is_monomializable(v) ? "true" : "false") + "\n";
        } else if (*c_push) {
            PushResult pr = pushforward(F, weights_valuation(weights), max_refine);
            out += "d = " + pr.multiplier.to_string() + "\n";
            out += "image = " + pr.image.render() + "\n";
            out += "witnesses = " + std::to_string(pr.witnesses.size()) +
                   (pr.witnesses_complete ? "" : " (incomplete)") + "\n";
            for (auto& w : pr.witnesses) out += "witness = " + w.to_string() + "\n";
            out += std::string("truncated = ") + (pr.truncated ? "true" : "false") + "\n";
        } else if (*c_jac) {
            JacobianCheck j = jacobian_formula_check(F, weights_valuation(weights));
            out += "lhs = " + j.lhs.to_string() + "\n";
            out += "rhs = " + j.rhs.to_string() + "\n";
            out += std::string("equal = ") + (j.equal ? "true" : "false") + "\n";
        } else if (*c_ext) {
            out = std::string("extends = ") +
                  (extends_to_weighted_P2(F, pw, qw) ? "true" : "false") + "\n";
        } else if (*c_wit) {
            auto w = non_properness_witness(F, bound);
            if (w) {
                out += "witness = " + w->render() + "\n";
                out += "d = 0\n";
            } else {
                out += "witness = none (bound=" + std::to_string(bound) + ")\n";
            }
        } else if (*c_blow) {
            auto [g, id] = realize_divisorial(weights_valuation(weights));
            out = g.dump();
            out += "prime = " + std::to_string(id) + "\n";
        } else if (*g_value) {
            double l1 = lambda1_of(lambda1_flag);
            GreenSample s = green_value(F, gx, gy, l1, n_max, tol);
            out += "G = " + fmt12(s.estimate) + "\n";
            out += std::string("converged = ") + (s.converged ? "true" : "false") + "\n";
            out += "n = " + std::to_string(s.n_used) + "\n";
        } else if (*g_grid) {
            double l1 = lambda1_of(lambda1_flag);
            GreenGrid g = grid(F, window[0], window[1], window[2], window[3], resolution, l1,
                               n_max, tol);
            if (!pgm_path.empty()) {
                std::ofstream pf(pgm_path, std::ios::binary);
                if (!pf) throw Error("IO", "cannot open " + pgm_path);
                pf << g.pgm(gmax);
            }
            out = g.csv();
        } else if (*g_bound) {
            double l1 = lambda1_of(lambda1_flag);
            double l2 = lambda2_flag >= 0 ? lambda2_flag
                                          : static_cast<double>(topological_degree(F, the_seed));
            if (!(l2 < l1))
                std::fprintf(stderr,
                             "warning: lambda2 = %g is not below lambda1 = %g; the growth "
                             "bound hypothesis fails\n",
                             l2, l1);
            out = growth_bound_report(F, gx, gy, l1, l2, eps, n_max).render();
        }

        emit(out, out_path);
        return 0;
    } catch (const Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}

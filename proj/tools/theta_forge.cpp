// theta_forge: evaluation, verification suites, inversion, quartic roots and Painleve VI runs.
// Exit codes: 0 pass, 1 some check failed, 2 usage error, 3 numeric-domain error.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "thetaforge/constants.hpp"
#include "thetaforge/inversion.hpp"
#include "thetaforge/painleve.hpp"
#include "thetaforge/power_series.hpp"
#include "thetaforge/theta_core.hpp"
#include "thetaforge/verify.hpp"
#include "thetaforge/weierstrass.hpp"

using namespace tf;
using ojson = nlohmann::ordered_json;

namespace {

struct Out {
    std::string path;
    std::string format = "json";
    void write(const std::string& s) const {
        if (path.empty() || path == "-") {
            std::cout << s;
            return;
        }
        std::ofstream f(path, std::ios::binary);
        if (!f) throw Error(ErrorCode::ParseError, "cannot write '" + path + "'");
        f << s;
    }
};

void add_out(CLI::App* c, Out& o) {
    c->add_option("-o,--output", o.path, "output file (default stdout)");
    c->add_option("--format", o.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
}

std::string text(cplx z, int digits) {
    char a[64], b[64];
    const double re = z.real() + 0.0, im = z.imag() + 0.0;
    std::snprintf(a, sizeof a, "%#.*g", digits, re);
    if (im == 0.0) return a;
    std::snprintf(b, sizeof b, "%+#.*gi", digits, im);
    return std::string(a) + b;
}

ojson value_json(cplx z, int digits) {
    ojson j;
    j["re"] = z.real();
    j["im"] = z.imag();
    j["text"] = text(z, digits);
    return j;
}

std::string emit(const std::vector<std::pair<std::string, cplx>>& vals, const ojson& head, const Out& o, int digits) {
    if (o.format == "csv") {
        std::string s = "name,re,im\n";
        char b[96];
        for (const auto& [k, v] : vals) {
            std::snprintf(b, sizeof b, ",%.*g,%.*g\n", digits, v.real(), digits, v.imag());
            s += k + b;
        }
        return s;
    }
    ojson j = head;
    ojson vs = ojson::object();
    for (const auto& [k, v] : vals) vs[k] = value_json(v, digits);
    j["values"] = vs;
    return j.dump(2) + "\n";
}

std::vector<double> parse_list(const std::string& s) {
    std::vector<double> v;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const cplx c = parse_complex(item);
        if (c.imag() != 0.0) throw Error(ErrorCode::ParseError, "x must be real: '" + item + "'");
        v.push_back(c.real());
    }
    if (v.empty()) throw Error(ErrorCode::ParseError, "empty list");
    return v;
}

int run(int argc, char** argv) {
    CLI::App app{"theta_forge: theta functions, their differential systems and modular inversion"};
    app.require_subcommand(1);

    // eval
    std::string fn, zs = "0", us = "0", taus = "i", k2s = "0.5";
    int index = 0, digits = 12;
    Out eo;
    auto* ev = app.add_subcommand("eval", "evaluate a function");
    ev->add_option("function", fn,
                   "theta, theta1..theta4, theta1_prime, nullwerte, eta, dedekind_eta, g2g3, J, wp, zeta, sigma, sn, cn, dn")
        ->required();
    ev->add_option("index", index, "k for theta");
    ev->add_option("--z", zs, "theta argument");
    ev->add_option("--u", us, "Weierstrass or Jacobi argument");
    ev->add_option("--tau", taus, "modulus");
    ev->add_option("--k2", k2s, "Jacobi parameter k^2");
    ev->add_option("--digits", digits, "significant digits")->check(CLI::Range(1, 17));
    add_out(ev, eo);

    // verify
    std::string suite;
    std::uint64_t seed = 1;
    std::string vtau;
    bool timing = false, serial = false;
    Out vo;
    auto* ve = app.add_subcommand("verify", "run a verification suite");
    ve->add_option("suite", suite, "identities, series, ode, modular, inversion, noncanonical, painleve or all")
        ->required();
    ve->add_option("--seed", seed, "sampling seed");
    ve->add_option("--tau", vtau, "pin tau-sampled checks to this modulus");
    ve->add_flag("--timing", timing, "write elapsed_ms (breaks byte-identical output)");
    ve->add_flag("--serial", serial, "run checks serially");
    add_out(ve, vo);

    // invert
    std::string as, bs, Js;
    Out io;
    auto* in = app.add_subcommand("invert", "tau from y^2 = 4x^3 - a x - b, or from J");
    auto* oa = in->add_option("--a", as, "cubic coefficient a");
    auto* ob = in->add_option("--b", bs, "cubic coefficient b");
    auto* oJ = in->add_option("--J", Js, "Klein invariant");
    oa->needs(ob);
    ob->needs(oa);
    oJ->excludes(oa)->excludes(ob);
    add_out(in, io);

    // roots
    std::string al = "0", be = "0", ga = "0";
    Out ro;
    auto* rt = app.add_subcommand("roots", "roots of x^4 - 6 alpha x^2 + 4 beta x + gamma");
    rt->add_option("--alpha", al)->required();
    rt->add_option("--beta", be)->required();
    rt->add_option("--gamma", ga)->required();
    add_out(rt, ro);

    // pvi
    std::string As, Bs, xs = "0.2,0.4,0.6";
    double pvi_tol = 1e-5;
    Out po;
    auto* pv = app.add_subcommand("pvi", "Painleve VI residuals of the elliptic solution with wp argument A tau + B");
    pv->add_option("--A", As)->required();
    pv->add_option("--B", Bs)->required();
    pv->add_option("--x", xs, "comma-separated real x in (0, 1)");
    pv->add_option("--tolerance", pvi_tol, "relative residual bound");
    add_out(pv, po);

    // series
    std::string table;
    int order = 8, alpha = 0, beta = 0, K = 24, sk = 3;
    std::string sz = "0.1", st = "i";
    Out so;
    auto* se = app.add_subcommand("series", "integer recurrence tables, or a theta power series value");
    se->add_option("--table", table, "A, B0, B1, G or Gab")->check(CLI::IsMember({"A", "B0", "B1", "G", "Gab"}));
    se->add_option("--order", order, "table size")->check(CLI::Range(0, 200));
    se->add_option("--alpha", alpha)->check(CLI::Range(0, 1));
    se->add_option("--beta", beta)->check(CLI::Range(0, 1));
    se->add_option("--k", sk, "theta index for the power series")->check(CLI::Range(1, 4));
    se->add_option("--z", sz);
    se->add_option("--tau", st);
    se->add_option("--K", K, "truncation order")->check(CLI::Range(1, 60));
    add_out(se, so);

    // report
    std::string rpath;
    Out pr;
    auto* rp = app.add_subcommand("report", "summarize a JSON report written by verify");
    rp->add_option("file", rpath)->required()->check(CLI::ExistingFile);
    add_out(rp, pr);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    if (ev->parsed()) {
        const ModularParameter tau(parse_complex(taus));
        const cplx z = parse_complex(zs), u = parse_complex(us), k2 = parse_complex(k2s);
        std::vector<std::pair<std::string, cplx>> vals;
        ojson head;
        head["function"] = fn;
        std::string f = fn;
        if (f.size() == 6 && f.rfind("theta", 0) == 0 && f[5] >= '1' && f[5] <= '4') {
            index = f[5] - '0';
            f = "theta";
        }
        if (f == "theta") {
            if (index < 1 || index > 4) throw Error(ErrorCode::BadIndex, "theta index must be 1..4");
            head["z"] = format_complex(z);
            head["tau"] = format_complex(tau.tau);
            vals.push_back({"theta" + std::to_string(index), theta_eval(index, z, tau)});
        } else if (f == "theta1_prime") {
            head["z"] = format_complex(z);
            head["tau"] = format_complex(tau.tau);
            vals.push_back({"theta1_prime", theta1_prime_eval(z, tau)});
        } else if (f == "nullwerte") {
            head["tau"] = format_complex(tau.tau);
            const auto v = nullwerte(tau);
            vals = {{"theta2", v.v2}, {"theta3", v.v3}, {"theta4", v.v4}, {"theta1_prime", v.v1prime}};
        } else if (f == "eta") {
            head["tau"] = format_complex(tau.tau);
            vals.push_back({"eta", weierstrass_eta(tau)});
        } else if (f == "dedekind_eta") {
            head["tau"] = format_complex(tau.tau);
            vals.push_back({"dedekind_eta", dedekind_eta(tau)});
        } else if (f == "g2g3") {
            head["tau"] = format_complex(tau.tau);
            const auto g = invariants(tau);
            vals = {{"g2", g.g2}, {"g3", g.g3}};
        } else if (f == "J") {
            head["tau"] = format_complex(tau.tau);
            vals.push_back({"J", klein_j(tau)});
        } else if (f == "wp" || f == "zeta" || f == "sigma") {
            head["u"] = format_complex(u);
            head["tau"] = format_complex(tau.tau);
            const auto q = weierstrass_eval(u, tau);
            vals.push_back({f, f == "wp" ? q.wp : f == "zeta" ? q.zeta : q.sigma});
            if (f == "wp") vals.push_back({"wp_prime", q.wp_prime});
        } else if (f == "sn" || f == "cn" || f == "dn") {
            head["u"] = format_complex(u);
            head["k2"] = format_complex(k2);
            const auto t = jacobi_sn_cn_dn(u, k2);
            vals.push_back({f, f == "sn" ? t.sn : f == "cn" ? t.cn : t.dn});
        } else {
            throw Error(ErrorCode::ParseError, "unknown function '" + fn + "'");
        }
        eo.write(emit(vals, head, eo, digits));
        return 0;
    }

    if (ve->parsed()) {
        VerifyOptions o;
        o.seed = seed;
        o.parallel = !serial;
        if (!vtau.empty()) {
            o.has_tau = true;
            o.tau = ModularParameter(parse_complex(vtau)).tau;
        }
        const auto t0 = std::chrono::steady_clock::now();
        const auto recs = run_suite(suite, o);
        const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        vo.write(vo.format == "csv" ? records_to_csv(recs) : records_to_json(recs, timing));
        std::size_t bad = 0;
        for (const auto& r : recs) bad += !r.passed;
        std::fprintf(stderr, "%zu checks, %zu failed, wall time %.3f s\n", recs.size(), bad, wall);
        return bad ? 1 : 0;
    }

    if (in->parsed()) {
        ojson j;
        cplx target;
        ModularParameter tau(I);
        if (!Js.empty()) {
            target = parse_complex(Js);
            j["J"] = format_complex(target);
            tau = modular_inversion_alt(target);
        } else if (!as.empty()) {
            const CubicCurve c{parse_complex(as), parse_complex(bs)};
            j["a"] = format_complex(c.a);
            j["b"] = format_complex(c.b);
            const cplx d = c.a * c.a * c.a - 27.0 * c.b * c.b;
            if (d == 0.0) throw Error(ErrorCode::Degenerate, "a^3 = 27 b^2");
            target = c.a * c.a * c.a / d;
            // a = 0 is the equianharmonic curve, J = 0
            tau = c.a == 0.0 ? ModularParameter(cplx(0.5, std::sqrt(3.0) / 2.0)) : modular_inversion(c);
        } else {
            throw Error(ErrorCode::ParseError, "invert needs --a and --b, or --J");
        }
        const double res = std::abs(klein_j(tau) - target) / std::max(1.0, std::abs(target));
        j["tau"] = value_json(tau.tau, 12);
        j["J_residual"] = res;
        io.write(io.format == "csv" ? "tau_re,tau_im,J_residual\n" + std::to_string(tau.tau.real()) + "," +
                                          std::to_string(tau.tau.imag()) + "," + std::to_string(res) + "\n"
                                    : j.dump(2) + "\n");
        return res <= 1e-6 ? 0 : 1;
    }

    if (rt->parsed()) {
        const cplx a = parse_complex(al), b = parse_complex(be), g = parse_complex(ga);
        const auto r = quartic_roots(a, b, g);
        ojson j;
        j["alpha"] = format_complex(a);
        j["beta"] = format_complex(b);
        j["gamma"] = format_complex(g);
        ojson arr = ojson::array();
        std::string csv = "re,im,residual\n";
        double worst = 0.0;
        for (cplx x : r) {
            const double sc =
                std::pow(std::abs(x), 4) + 6.0 * std::abs(a * x * x) + 4.0 * std::abs(b * x) + std::abs(g);
            const double res = std::abs(x * x * x * x - 6.0 * a * x * x + 4.0 * b * x + g) / std::max(sc, 1e-300);
            worst = std::max(worst, res);
            ojson e = value_json(x, 12);
            e["residual"] = res;
            arr.push_back(e);
            char buf[128];
            std::snprintf(buf, sizeof buf, "%.12g,%.12g,%.3g\n", x.real(), x.imag(), res);
            csv += buf;
        }
        j["roots"] = arr;
        ro.write(ro.format == "csv" ? csv : j.dump(2) + "\n");
        return worst <= 1e-7 ? 0 : 1;
    }

    if (pv->parsed()) {
        const HitchinConstants c{parse_complex(As), parse_complex(Bs)};
        const auto xv = parse_list(xs);
        for (double x : xv)
            if (!(x > 0.0 && x < 1.0)) throw Error(ErrorCode::DegenerateModulus, "x must lie in (0, 1)");
        const auto s = pvi_residual(c, xv);
        bool ok = true;
        ojson arr = ojson::array();
        for (const auto& p : s) {
            ok = ok && p.residual <= pvi_tol;
            ojson e;
            e["x"] = p.x;
            e["y"] = value_json(p.y, 12);
            e["residual"] = p.residual;
            e["tau_form_diff"] = p.tau_form_diff;
            e["passed"] = p.residual <= pvi_tol;
            arr.push_back(e);
        }
        po.write(po.format == "csv" ? pvi_csv(s) : arr.dump(2) + "\n");
        return ok ? 0 : 1;
    }

    if (se->parsed()) {
        if (!table.empty()) {
            const int n = order;
            const IntegerTable2D t = table == "A"    ? table_A(n, n)
                                     : table == "B0" ? table_B(0, n, n)
                                     : table == "B1" ? table_B(1, n, n)
                                     : table == "G"  ? table_G(n)
                                                     : table_G_ab(alpha, beta, n);
            if (so.format == "csv") {
                std::ostringstream os;
                t.write_csv(os);
                so.write(os.str());
            } else {
                // big integers as strings
                ojson rows = ojson::array();
                for (int m = 0; m < t.rows(); ++m) {
                    ojson row = ojson::array();
                    for (int k = 0; k < t.cols(); ++k) row.push_back(t.at(m, k).str());
                    rows.push_back(row);
                }
                ojson j;
                j["table"] = table;
                j["rows"] = rows;
                so.write(j.dump(2) + "\n");
            }
            return 0;
        }
        const ModularParameter tau(parse_complex(st));
        const cplx z = parse_complex(sz);
        const auto ch = index_to_char(sk);
        const int sign = char_to_index(ch).second;
        const cplx ps = double(sign) * theta_power_series(ch, z, tau, K), tr = theta_eval(sk, z, tau);
        ojson head;
        head["function"] = "theta" + std::to_string(sk);
        head["z"] = format_complex(z);
        head["tau"] = format_complex(tau.tau);
        head["K"] = K;
        so.write(emit({{"power_series", ps}, {"trigonometric", tr}}, head, so, 12));
        return 0;
    }

    if (rp->parsed()) {
        std::ifstream f(rpath, std::ios::binary);
        std::stringstream ss;
        ss << f.rdbuf();
        const auto recs = records_from_json(ss.str());
        std::size_t bad = 0;
        std::map<int, std::pair<int, int>> by;  // criterion -> (passed, total)
        for (const auto& r : recs) {
            bad += !r.passed;
            auto& p = by[r.criterion];
            p.first += r.passed;
            p.second += 1;
        }
        if (pr.format == "csv") {
            pr.write(records_to_csv(recs));
        } else {
            ojson j;
            j["records"] = recs.size();
            j["failed"] = bad;
            ojson c = ojson::array();
            for (const auto& [k, v] : by) c.push_back({{"criterion", k}, {"passed", v.first}, {"total", v.second}});
            j["criteria"] = c;
            ojson fails = ojson::array();
            for (const auto& r : recs)
                if (!r.passed) fails.push_back({{"check_name", r.check_name}, {"equation_ref", r.equation_ref}});
            j["failures"] = fails;
            pr.write(j.dump(2) + "\n");
        }
        return bad ? 1 : 0;
    }
    return 2;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        const auto c = e.code();
        return (c == ErrorCode::ParseError || c == ErrorCode::UnknownSuite) ? 2 : 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}

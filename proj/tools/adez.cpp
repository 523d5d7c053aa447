#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <optional>

#include "adez/numerics.hpp"
#include "adez/report.hpp"

namespace {

using namespace adez;

struct Output {
    std::string format = "json";
    std::string path;  // empty = stdout

    void write(const std::string& text) const {
        if (path.empty()) {
            std::cout << text << "\n";
            return;
        }
        std::ofstream out(path, std::ios::binary);
        if (!out) throw std::runtime_error("cannot open output path " + path);
        out << text << "\n";
    }
};

Complex parse_point(const std::string& text) {
    auto comma = text.find(',');
    if (comma == std::string::npos) return Complex(std::stod(text), 0.0);
    return Complex(std::stod(text.substr(0, comma)), std::stod(text.substr(comma + 1)));
}

std::string csv_complex_row(const std::string& label, const CVector& v, double err) {
    std::string row = label;
    for (long long a = 0; a < v.size(); ++a)
        row += "," + format_double(v(a).real()) + "," + format_double(v(a).imag());
    row += "," + format_double(err);
    return row;
}

int cmd_describe(const std::string& spec_text, const Output& out) {
    LatticeSpec spec = LatticeSpec::parse(spec_text);
    Json doc = describe_payload(spec);
    if (out.format == "csv") {
        std::string text = "key,value";
        for (auto& [key, value] : doc.items())
            text += "\n" + key + ",\"" + value.dump() + "\"";
        out.write(text);
    } else {
        out.write(doc.dump(2));
    }
    return 0;
}

int cmd_eval(const std::string& spec_text, const std::string& what, const std::string& point_text,
             const std::string& method, std::optional<long long> bound, const Output& out) {
    LatticeSpec spec = LatticeSpec::parse(spec_text);
    DiscriminantData data = discriminant_data(spec);
    WeilRep rep = build_weil(data);
    Complex point = parse_point(point_text);

    Json doc{{"report_schema", 1}, {"command", "eval"},    {"spec", spec.name()},
             {"what", what},       {"point", complex_json(point)}};
    CVector values;
    double err = 0.0;

    if (what == "theta") {
        HalfPlane plane = point.imag() > 0.0 ? HalfPlane::upper_tau : HalfPlane::rotated_xi;
        ThetaEvaluation ev = bound ? theta_vector(*shared_spectra(data, Rat(*bound)), point, plane)
                                   : theta_vector(data, point, plane);
        values = ev.values;
        err = ev.tail_bound;
        doc["plane"] = plane == HalfPlane::upper_tau ? "upper_tau" : "rotated_xi";
        doc["truncation_bound"] = rat_str(ev.truncation_bound);
    } else if (what == "zeta") {
        Rat b = bound ? Rat(*bound) : Rat(40);
        if (method == "direct") {
            ZetaEvaluation ev = zeta_direct(*shared_spectra(data, b), point);
            values = ev.zeta;
            err = ev.abs_error;
            doc["method"] = "direct";
        } else if (method == "continued") {
            XiEvaluation ev = xi_continued(data, rep, point, 1e-11);
            values = zeta_from_xi(ev);
            err = ev.abs_error;
            doc["method"] = "continued";
        } else {  // auto: run both when the direct sum converges, cross-check
            XiEvaluation cont = xi_continued(data, rep, point, 1e-11);
            values = zeta_from_xi(cont);
            err = cont.abs_error;
            doc["method"] = "auto";
            if (point.real() > to_double(data.k) + 0.5) {
                ZetaEvaluation direct = zeta_direct(*shared_spectra(data, b), point);
                doc["cross_check_max_diff"] =
                    format_double((direct.zeta - values).cwiseAbs().maxCoeff());
                doc["direct_tail_bound"] = format_double(direct.abs_error);
            }
        }
    } else if (what == "xi") {
        XiEvaluation ev = bound ? xi_continued(*shared_spectra(data, Rat(*bound)), rep, point)
                                : xi_continued(data, rep, point, 1e-11);
        values = ev.xi;
        err = ev.abs_error;
        Json hat = Json::array();
        for (long long a = 0; a < ev.xi_hat.size(); ++a) hat.push_back(complex_json(ev.xi_hat(a)));
        doc["xi_hat"] = std::move(hat);
    } else {
        throw std::invalid_argument("--what must be theta, zeta or xi");
    }

    if (out.format == "csv") {
        std::string header = "label";
        for (long long a = 0; a < values.size(); ++a)
            header += ",re_" + std::to_string(a) + ",im_" + std::to_string(a);
        header += ",abs_error";
        out.write(header + "\n" + csv_complex_row(what, values, err));
        return 0;
    }
    Json jvals = Json::array();
    for (long long a = 0; a < values.size(); ++a) jvals.push_back(complex_json(values(a)));
    doc["values"] = std::move(jvals);
    doc["abs_error"] = format_double(err);
    out.write(doc.dump(2));
    return 0;
}

int cmd_verify(const std::string& spec_text, const std::string& suite, double tol,
               const Output& out) {
    std::vector<LatticeSpec> specs;
    if (spec_text == "all")
        specs = default_spec_set();
    else
        specs.push_back(LatticeSpec::parse(spec_text));

    VerificationReport report = run_verification(specs, suite, tol);
    if (out.format == "csv") {
        std::string text = "name,residual,tolerance,status,notes";
        for (const auto& c : report.checks) {
            std::string notes = c.notes;
            for (auto& ch : notes)
                if (ch == ',') ch = ';';
            text += "\n" + c.name + "," + format_double(c.residual) + "," +
                    format_double(c.tolerance) + "," + c.status + "," + notes;
        }
        out.write(text);
    } else {
        out.write(report_document(report).dump(2));
    }
    return report.all_ok() ? 0 : 1;
}

int cmd_scan(const std::string& spec_text, double re, double t_min, double t_max, int steps,
             const Output& out) {
    if (steps < 2) throw std::invalid_argument("scan needs --steps >= 2");
    if (!(t_max > t_min)) throw std::invalid_argument("scan needs --t-max > --t-min");
    LatticeSpec spec = LatticeSpec::parse(spec_text);
    DiscriminantData data = discriminant_data(spec);
    WeilRep rep = build_weil(data);
    const double k = to_double(data.k);

    std::string text = "# spec=" + spec.name() + " k=" + rat_str(data.k) + "\nt";
    for (long long a = 0; a < data.l; ++a)
        text += ",re_xi_hat_" + std::to_string(a) + ",im_xi_hat_" + std::to_string(a);
    text += ",abs_error,warning";

    for (int j = 0; j < steps; ++j) {
        double t = t_min + (t_max - t_min) * j / (steps - 1);
        Complex s(re, t);
        std::string warning;
        if (std::abs(s) < 1e-5 || std::abs(s - k) < 1e-5) {
            s += Complex(0.0, 1e-4);  // step off the pole along the scan line
            warning = "shifted-off-pole";
        }
        XiEvaluation ev = xi_continued(data, rep, s, 1e-11);
        text += "\n" + format_double(t);
        for (long long a = 0; a < data.l; ++a)
            text += "," + format_double(ev.xi_hat(a).real()) + "," +
                    format_double(ev.xi_hat(a).imag());
        text += "," + format_double(ev.abs_error) + "," + warning;
    }
    out.write(text);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Weil representation, theta and Epstein vector zeta data for ADE root lattices"};
    app.require_subcommand(1);
    app.fallthrough();

    Output out;
    app.add_option("--format", out.format, "Output format")
        ->check(CLI::IsMember({"json", "csv"}));
    app.add_option("--out", out.path, "Output path (default: stdout)");

    std::string spec_text, what = "theta", point_text = "1,0", method = "auto",
                suite = "all";
    std::optional<long long> bound;
    double tol = 1e-8, re = 0.0, t_min = 0.0, t_max = 10.0;
    int steps = 0;

    auto* describe = app.add_subcommand("describe", "Lattice and discriminant-form data");
    describe->add_option("spec", spec_text, "Lattice spec, e.g. A4, D5, E8")->required();

    auto* eval = app.add_subcommand("eval", "Evaluate theta, zeta or xi at one point");
    eval->add_option("spec", spec_text)->required();
    eval->add_option("--what", what)->check(CLI::IsMember({"theta", "zeta", "xi"}))->required();
    eval->add_option("--point", point_text, "RE,IM")->required();
    eval->add_option("--method", method)->check(CLI::IsMember({"direct", "continued", "auto"}));
    eval->add_option("--bound", bound, "Truncation bound override");

    auto* verify = app.add_subcommand("verify", "Run a verification suite");
    verify->add_option("spec", spec_text, "Lattice spec or 'all'")->required();
    verify->add_option("--suite", suite)
        ->check(CLI::IsMember({"lattice", "weil", "theta", "fe", "all"}));
    verify->add_option("--tol", tol)->check(CLI::Range(1e-12, 1e-2));

    auto* scan = app.add_subcommand("scan", "Sample xi_hat along a vertical line");
    scan->add_option("spec", spec_text)->required();
    scan->add_option("--re", re)->required();
    scan->add_option("--t-min", t_min)->required();
    scan->add_option("--t-max", t_max)->required();
    scan->add_option("--steps", steps)->required();

    try {
        app.parse(argc, argv);
        if (describe->parsed()) return cmd_describe(spec_text, out);
        if (eval->parsed()) return cmd_eval(spec_text, what, point_text, method, bound, out);
        if (verify->parsed()) return cmd_verify(spec_text, suite, tol, out);
        if (scan->parsed()) return cmd_scan(spec_text, re, t_min, t_max, steps, out);
        return 2;
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const PoleError& e) {
        std::cerr << "domain error: " << e.what() << "\n";
        return 2;
    } catch (const BoundaryError& e) {
        std::cerr << "domain error: " << e.what() << "\n";
        return 2;
    } catch (const numerics::DomainError& e) {
        std::cerr << "domain error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

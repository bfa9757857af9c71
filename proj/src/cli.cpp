#include "wbr/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>

#include "wbr/classify.hpp"
#include "wbr/errors.hpp"
#include "wbr/transfer.hpp"
#include "wbr/verify.hpp"

namespace wbr {

namespace {

struct PosetFlags {
    std::string file;
    long long cyclic = 0;
    std::string abelian;

    void attach(CLI::App* cmd) {
        cmd->add_option("--poset", file, "poset JSON file");
        cmd->add_option("--cyclic", cyclic, "divisor poset of N");
        cmd->add_option("--abelian", abelian, "invariant factors, comma separated");
    }

    PosetPtr build() const {
        int given = (!file.empty()) + (cyclic > 0) + (!abelian.empty());
        if (given != 1) throw ValidationError("exactly one of --poset/--cyclic/--abelian is required");
        if (cyclic > 0) {
            std::set<long long> ds;
            for (long long d = 1; d <= cyclic; ++d)
                if (cyclic % d == 0) ds.insert(d);
            return GroupPoset::cyclic(ds);
        }
        if (!abelian.empty()) {
            std::vector<long long> inv;
            std::stringstream ss(abelian);
            std::string item;
            while (std::getline(ss, item, ',')) inv.push_back(std::stoll(item));
            return GroupPoset::finite_abelian(inv);
        }
        std::ifstream in(file);
        if (!in) throw ValidationError("cannot open poset file '" + file + "'");
        return GroupPoset::from_json(nlohmann::json::parse(in));
    }
};

// The vector document normally embeds its poset; an explicit --poset must
// agree with it, and supplies it when the document leaves it out.
RingVector load_vector(const std::string& path, const PosetFlags& flags) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open vector file '" + path + "'");
    nlohmann::json doc = nlohmann::json::parse(in);
    bool have_flag = !flags.file.empty() || flags.cyclic > 0 || !flags.abelian.empty();
    if (have_flag) {
        nlohmann::json pj = flags.build()->to_json();
        if (doc.contains("poset") && doc.at("poset") != pj)
            throw ValidationError("--poset disagrees with the vector document");
        doc["poset"] = pj;
    }
    return RingVector::from_json(doc);
}

long long parse_int_q(const std::string& q) {
    try {
        size_t pos = 0;
        long long v = std::stoll(q, &pos);
        if (pos == q.size()) return v;
    } catch (const std::exception&) {
    }
    throw ValidationError("--q must be an integer here");
}

void emit(const std::string& text, const std::string& out_file, std::ostream& out) {
    if (out_file.empty()) {
        out << text;
        if (text.empty() || text.back() != '\n') out << "\n";
        return;
    }
    std::ofstream f(out_file);
    if (!f) throw ValidationError("cannot write to '" + out_file + "'");
    f << text;
    if (text.empty() || text.back() != '\n') f << "\n";
}

std::string dump(const nlohmann::json& j) { return j.dump(1); }

std::string csv_quote(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"q-deformed Witt-Burnside and necklace ring calculator"};
    app.require_subcommand(1);

    std::string out_file, format = "json", necklace_format = "csv", q_flag = "sym", vector_file,
        vector2_file, suite;
    long long r_flag = 1, n_flag = 1, d_flag = 0;
    int m_flag = 0;
    bool inverse = false;
    std::string element;
    VerifyParams vp;

    PosetFlags poset_flags, necklace_poset, structure_poset, pcoeff_poset, classify_poset, vector_poset;

    auto* poset_cmd = app.add_subcommand("poset", "build and validate a poset, emit canonical JSON");
    poset_flags.attach(poset_cmd);
    poset_cmd->add_option("--out", out_file);

    auto* ghost_cmd = app.add_subcommand("ghost", "ghost components of a vector");
    vector_poset.attach(ghost_cmd);
    ghost_cmd->add_option("--q", q_flag, "integer or 'sym'");
    ghost_cmd->add_option("--vector", vector_file)->required();
    ghost_cmd->add_option("--out", out_file);

    auto* add_cmd = app.add_subcommand("add", "sum of two vectors");
    vector_poset.attach(add_cmd);
    add_cmd->add_option("--q", q_flag)->required();
    add_cmd->add_option("--vector", vector_file)->required();
    add_cmd->add_option("--vector2", vector2_file)->required();
    add_cmd->add_option("--out", out_file);

    auto* mul_cmd = app.add_subcommand("mul", "product of two vectors");
    vector_poset.attach(mul_cmd);
    mul_cmd->add_option("--q", q_flag)->required();
    mul_cmd->add_option("--vector", vector_file)->required();
    mul_cmd->add_option("--vector2", vector2_file)->required();
    mul_cmd->add_option("--out", out_file);

    auto* neg_cmd = app.add_subcommand("neg", "additive inverse of a vector");
    vector_poset.attach(neg_cmd);
    neg_cmd->add_option("--q", q_flag)->required();
    neg_cmd->add_option("--vector", vector_file)->required();
    neg_cmd->add_option("--out", out_file);

    auto* necklace_cmd = app.add_subcommand("necklace", "orbit-sum polynomials of a poset");
    necklace_poset.attach(necklace_cmd);
    necklace_cmd->add_flag("--symbolic", "emit polynomials in q (always on)");
    necklace_cmd->add_option("--element", element, "restrict to one poset element");
    necklace_cmd->add_option("--m", m_flag, "expand over an m-letter alphabet");
    necklace_cmd->add_option("--format", necklace_format, "json|csv");
    necklace_cmd->add_option("--out", out_file);

    auto* structure_cmd = app.add_subcommand("structure", "universal addition/product/inverse polynomials");
    structure_poset.attach(structure_cmd);
    structure_cmd->add_option("--q", q_flag, "integer or 'sym'");
    structure_cmd->add_option("--out", out_file);

    auto* pcoeff_cmd = app.add_subcommand("pcoeffs", "P^U_{V,W}(q) table");
    pcoeff_poset.attach(pcoeff_cmd);
    pcoeff_cmd->add_option("--out", out_file);

    auto* tau_cmd = app.add_subcommand("tau", "q-Teichmueller map (abelian posets)");
    vector_poset.attach(tau_cmd);
    tau_cmd->add_option("--q", q_flag)->required();
    tau_cmd->add_option("--vector", vector_file)->required();
    tau_cmd->add_flag("--inverse", inverse, "apply the inverse map");
    tau_cmd->add_option("--out", out_file);

    auto* frob_cmd = app.add_subcommand("frobenius", "cyclic Frobenius (q-restriction to index r)");
    vector_poset.attach(frob_cmd);
    frob_cmd->add_option("--q", q_flag)->required();
    frob_cmd->add_option("--r", r_flag)->required();
    frob_cmd->add_option("--vector", vector_file)->required();
    frob_cmd->add_option("--out", out_file);

    auto* lenart_cmd = app.add_subcommand("lenart", "Lenart coefficients Q_{r,n,d}(q)");
    lenart_cmd->add_option("--r", r_flag)->required();
    lenart_cmd->add_option("--n", n_flag)->required();
    lenart_cmd->add_option("--d", d_flag, "single divisor (default: all d | n)");
    lenart_cmd->add_option("--format", format, "json|csv");
    lenart_cmd->add_option("--out", out_file);

    auto* classify_cmd = app.add_subcommand("classify", "strict-isomorphism decision between q and r");
    classify_poset.attach(classify_cmd);
    classify_cmd->add_option("--q", q_flag)->required();
    classify_cmd->add_option("--r", r_flag)->required();
    classify_cmd->add_option("--out", out_file);

    auto* verify_cmd = app.add_subcommand("verify", "run a named verification suite");
    verify_cmd->add_option("suite", suite, "integrality|ring-axioms|necklace-oracle|mackey|lenart|classify|all")
        ->required();
    verify_cmd->add_option("--rmax", vp.lenart_rmax);
    verify_cmd->add_option("--nmax", vp.lenart_nmax);
    verify_cmd->add_option("--vectors", vp.random_vectors);
    verify_cmd->add_option("--seed", vp.seed);
    verify_cmd->add_option("--out", out_file);

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {  // --help
            out << app.help();
            return 0;
        }
        err << "usage error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (poset_cmd->parsed()) {
            emit(dump(poset_flags.build()->to_json()), out_file, out);
        } else if (ghost_cmd->parsed()) {
            RingVector v = load_vector(vector_file, vector_poset);
            if (q_flag == "sym") {
                auto g = v.kind == VecKind::Witt ? ghost_witt_symbolic(v) : ghost_necklace_symbolic(v);
                nlohmann::json entries = nlohmann::json::object();
                for (int i = 0; i < v.poset->size(); ++i) entries[v.poset->label(i)] = g[i].to_json();
                emit(dump({{"poset", v.poset->to_json()}, {"kind", "ghost"}, {"entries", entries}}),
                     out_file, out);
            } else {
                long long q = parse_int_q(q_flag);
                RingVector g = v.kind == VecKind::Witt ? ghost_witt(q, v) : ghost_necklace(q, v);
                emit(dump(g.to_json()), out_file, out);
            }
        } else if (add_cmd->parsed() || mul_cmd->parsed() || neg_cmd->parsed()) {
            long long q = parse_int_q(q_flag);
            RingVector a = load_vector(vector_file, vector_poset);
            RingVector result = a;
            if (neg_cmd->parsed()) {
                result = a.kind == VecKind::Witt ? witt_neg(q, a) : componentwise_neg(a);
            } else {
                RingVector b = load_vector(vector2_file, vector_poset);
                if (add_cmd->parsed())
                    result = a.kind == VecKind::Witt ? witt_add(q, a, b) : componentwise_add(a, b);
                else
                    result = a.kind == VecKind::Witt ? witt_mul(q, a, b) : nr_mul(q, a, b);
            }
            emit(dump(result.to_json()), out_file, out);
        } else if (necklace_cmd->parsed()) {
            PosetPtr poset = necklace_poset.build();
            std::vector<int> elems;
            if (!element.empty())
                elems.push_back(poset->position(element));
            else
                for (int i = 0; i < poset->size(); ++i) elems.push_back(i);
            auto poly_of = [&](int v) {
                OrbitSumPoly os = orbit_sum(poset, v);
                return m_flag > 0 ? os.multivariate(m_flag) : os.univariate();
            };
            if (necklace_format == "csv") {
                std::string text = "V,polynomial\n";
                for (int v : elems) text += csv_quote(poset->label(v)) + "," + csv_quote(poly_of(v).str()) + "\n";
                emit(text, out_file, out);
            } else {
                nlohmann::json entries = nlohmann::json::object();
                for (int v : elems) entries[poset->label(v)] = poly_of(v).to_json();
                emit(dump({{"poset", poset->to_json()}, {"orbit_sums", entries}}), out_file, out);
            }
        } else if (structure_cmd->parsed()) {
            PosetPtr poset = structure_poset.build();
            StructureTable t =
                q_flag == "sym" ? structure_table(poset) : structure_table_at(poset, parse_int_q(q_flag));
            emit(dump(t.to_json()), out_file, out);
        } else if (pcoeff_cmd->parsed()) {
            emit(dump(p_coeffs(pcoeff_poset.build()).to_json()), out_file, out);
        } else if (tau_cmd->parsed()) {
            long long q = parse_int_q(q_flag);
            RingVector v = load_vector(vector_file, vector_poset);
            emit(dump((inverse ? tau_inverse(q, v) : tau(q, v)).to_json()), out_file, out);
        } else if (frob_cmd->parsed()) {
            long long q = parse_int_q(q_flag);
            emit(dump(frobenius_cyclic(q, r_flag, load_vector(vector_file, vector_poset)).to_json()), out_file, out);
        } else if (lenart_cmd->parsed()) {
            std::vector<long long> ds;
            if (d_flag > 0)
                ds.push_back(d_flag);
            else
                for (long long d = 1; d <= n_flag; ++d)
                    if (n_flag % d == 0) ds.push_back(d);
            if (format == "csv") {
                std::string text = "r,n,d,Q\n";
                for (long long d : ds)
                    text += std::to_string(r_flag) + "," + std::to_string(n_flag) + "," + std::to_string(d) +
                            "," + csv_quote(lenart_Q(r_flag, n_flag, d).str()) + "\n";
                emit(text, out_file, out);
            } else {
                nlohmann::json entries = nlohmann::json::object();
                for (long long d : ds) entries[std::to_string(d)] = lenart_Q(r_flag, n_flag, d).to_json();
                emit(dump({{"r", r_flag}, {"n", n_flag}, {"Q", entries}}), out_file, out);
            }
        } else if (classify_cmd->parsed()) {
            PosetPtr poset = classify_poset.build();
            long long q = parse_int_q(q_flag);
            IsoDecision d = strict_iso_over_Z(poset, q, r_flag);
            TransferSolution sol = solve_transfer(poset, q, r_flag);
            nlohmann::json doc = d.to_json();
            doc["transfer"] = sol.to_json()["transfer"];
            doc["q"] = q;
            doc["r"] = r_flag;
            emit(dump(doc), out_file, out);
        } else if (verify_cmd->parsed()) {
            auto reports = run_suites(suite, vp);
            bool ok = true;
            nlohmann::json arr = nlohmann::json::array();
            for (const auto& rep : reports) {
                ok = ok && rep.pass();
                arr.push_back(rep.to_json());
                for (const auto& c : rep.checks)
                    err << (c.pass ? "pass " : "FAIL ") << rep.suite << "/" << c.name
                        << (c.detail.empty() ? "" : "  [" + c.detail + "]") << "\n";
            }
            emit(dump(arr.size() == 1 ? arr[0] : nlohmann::json{{"suites", arr}}), out_file, out);
            return ok ? 0 : 1;
        }
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}

}  // namespace wbr

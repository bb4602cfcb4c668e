#include "relcx/jsonio.hpp"

#include <stdexcept>

namespace relcx {

using nlohmann::json;

json field_to_json(const Field& F) {
    return json{{"p", F.p()}, {"f", F.f()}, {"modulus", F.modulus()}};
}

json mat_to_json(const Mat& m) {
    json rows = json::array();
    for (int i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (int j = 0; j < m.cols(); ++j) row.push_back(m.at(i, j));
        rows.push_back(std::move(row));
    }
    return json{{"rows", m.rows()}, {"cols", m.cols()}, {"entries", std::move(rows)}};
}

json subspace_to_json(const Subspace& s) {
    json rows = json::array();
    for (int i = 0; i < s.dim(); ++i) {
        json row = json::array();
        for (int j = 0; j < s.n(); ++j) row.push_back(s.basis().at(i, j));
        rows.push_back(std::move(row));
    }
    return rows;
}

json tuple_to_json(const SubspaceTuple& X) {
    json arr = json::array();
    for (const auto& s : X.entries) arr.push_back(subspace_to_json(s));
    return arr;
}

json elem_to_json(const SemilinearElem& x) {
    return json{{"matrix", mat_to_json(x.g)}, {"aut", x.aut}};
}

json group_to_json(const GroupSpec& H) {
    json j{{"n", H.n()}, {"p", H.field()->p()}, {"f", H.field()->f()}};
    switch (H.mode()) {
        case GroupMode::SL: j["mode"] = "SL"; break;
        case GroupMode::GL: j["mode"] = "GL"; break;
        case GroupMode::SigmaL: j["mode"] = "SigmaL"; break;
        case GroupMode::GammaL: j["mode"] = "GammaL"; break;
        case GroupMode::Parametric:
            j["mode"] = "param";
            j["d"] = H.param_d();
            j["e"] = H.param_e();
            break;
        case GroupMode::Explicit: {
            j["mode"] = "explicit";
            json gens = json::array();
            for (const auto& g : H.generators()) gens.push_back(elem_to_json(g));
            j["generators"] = std::move(gens);
            break;
        }
    }
    return j;
}

json bounds_to_json(const BoundInterval& b) {
    json j;
    j["lower"] = b.lower ? json(b.lower->value) : json(nullptr);
    j["upper"] = b.upper ? json(b.upper->value) : json(nullptr);
    json sources = json::array();
    if (b.lower) sources.push_back("lower:" + b.lower->source);
    if (b.upper) sources.push_back("upper:" + b.upper->source);
    for (const auto& n : b.notes) sources.push_back("note:" + n);
    j["sources"] = std::move(sources);
    return j;
}

json report_to_json(const RCReport& rep, bool include_timings) {
    json j;
    j["group"] = rep.group;
    j["n"] = rep.n;
    j["p"] = rep.p;
    j["f"] = rep.f;
    j["m"] = rep.m;
    j["omega_size"] = rep.omega_size;
    j["exact"] = rep.exact;
    j["rc"] = rep.rc ? json(*rep.rc) : json(nullptr);
    j["interval"] = json{{"lower", rep.interval_lo},
                         {"upper", rep.interval_hi ? json(*rep.interval_hi) : json(nullptr)}};
    if (rep.witness) {
        json w;
        w["prefix"] = rep.witness->prefix;
        w["x_last"] = rep.witness->x_last;
        w["y_last"] = rep.witness->y_last;
        w["k"] = rep.witness->k();
        j["witness"] = std::move(w);
    } else {
        j["witness"] = nullptr;
    }
    j["height"] = rep.height ? json(*rep.height) : json(nullptr);
    j["ibase"] = rep.ibase ? json(*rep.ibase) : json(nullptr);
    j["bounds"] = bounds_to_json(rep.bounds);
    j["ceiling_used"] = rep.k_bound_used;
    if (include_timings) {
        j["elapsed_ms"] = rep.elapsed_ms;
        j["nodes"] = rep.nodes;
        j["threads"] = rep.threads;
    }
    return j;
}

json package_to_json(const WitnessPackage& pkg) {
    json params;
    params["n"] = pkg.group.n();
    params["p"] = pkg.group.field()->p();
    params["f"] = pkg.group.field()->f();
    params["m"] = pkg.m;
    params["lambda"] = pkg.params.lambda ? json(*pkg.params.lambda) : json(nullptr);
    params["tau"] = pkg.params.tau ? json(*pkg.params.tau) : json(nullptr);
    params["alpha"] = pkg.params.alpha ? json(*pkg.params.alpha) : json(nullptr);
    params["psi"] = pkg.params.psi ? json(*pkg.params.psi) : json(nullptr);

    json wits = json::array();
    for (const auto& w : pkg.witnesses)
        wits.push_back(w ? elem_to_json(*w) : json(nullptr));

    return json{{"tag", pkg.tag},
                {"params", std::move(params)},
                {"group", group_to_json(pkg.group)},
                {"X", tuple_to_json(pkg.X)},
                {"Y", tuple_to_json(pkg.Y)},
                {"witnesses", std::move(wits)},
                {"claim_k", pkg.k}};
}

json verify_to_json(const VerifyReport& rep) {
    json per = json::array();
    for (size_t j = 0; j < rep.member_ok.size(); ++j)
        per.push_back(json{{"member", static_cast<bool>(rep.member_ok[j])},
                           {"maps", static_cast<bool>(rep.maps_ok[j])},
                           {"solver_found", static_cast<bool>(rep.solver_found[j])}});
    return json{{"tag", rep.tag},
                {"group", rep.group},
                {"k", rep.k},
                {"checks",
                 json{{"membership", rep.membership_pass()},
                      {"mapping", rep.mapping_pass()},
                      {"non_equivalence", rep.non_equiv_ok}}},
                {"per_witness", std::move(per)},
                {"statement", rep.statement},
                {"pass", rep.pass()}};
}

GroupSpec group_from_json(const json& j) {
    long long p = j.at("p").get<long long>();
    int f = j.at("f").get<int>();
    int n = j.at("n").get<int>();
    auto F = field_create(p, f);
    std::string mode = j.at("mode").get<std::string>();
    if (mode == "SL") return GroupSpec::SL(n, F);
    if (mode == "GL") return GroupSpec::GL(n, F);
    if (mode == "SigmaL") return GroupSpec::SigmaL(n, F);
    if (mode == "GammaL") return GroupSpec::GammaL(n, F);
    if (mode == "param")
        return GroupSpec::parametric(n, F, j.at("d").get<long long>(), j.at("e").get<int>());
    if (mode == "explicit") {
        std::vector<SemilinearElem> gens;
        for (const auto& je : j.at("generators")) {
            const auto& jm = je.at("matrix");
            int rows = jm.at("rows").get<int>();
            int cols = jm.at("cols").get<int>();
            Mat m(F, rows, cols);
            const auto& entries = jm.at("entries");
            for (int r = 0; r < rows; ++r)
                for (int c = 0; c < cols; ++c) m.set(r, c, entries[r][c].get<long long>());
            gens.push_back(SemilinearElem{m, je.at("aut").get<int>()});
        }
        return GroupSpec::from_generators(n, F, gens);
    }
    throw std::invalid_argument("group_from_json: unknown mode " + mode);
}

WitnessPackage package_from_json(const json& j) {
    GroupSpec H = group_from_json(j.at("group"));
    const FieldPtr& F = H.field();
    int n = H.n();

    auto tuple_from = [&](const json& arr) {
        std::vector<Subspace> out;
        for (const auto& js : arr) {
            std::vector<std::vector<long long>> rows;
            for (const auto& jr : js) rows.push_back(jr.get<std::vector<long long>>());
            out.push_back(Subspace(Mat::from_rows(F, rows)));
        }
        return SubspaceTuple(std::move(out));
    };

    WitnessPackage pkg{j.at("tag").get<std::string>(),
                       H,
                       j.at("params").at("m").get<int>(),
                       j.at("claim_k").get<int>(),
                       tuple_from(j.at("X")),
                       tuple_from(j.at("Y")),
                       {},
                       {}};
    for (const auto& jw : j.at("witnesses")) {
        if (jw.is_null()) {
            pkg.witnesses.push_back(std::nullopt);
            continue;
        }
        const auto& jm = jw.at("matrix");
        Mat m(F, jm.at("rows").get<int>(), jm.at("cols").get<int>());
        const auto& entries = jm.at("entries");
        for (int r = 0; r < m.rows(); ++r)
            for (int c = 0; c < m.cols(); ++c) m.set(r, c, entries[r][c].get<long long>());
        pkg.witnesses.push_back(SemilinearElem{m, jw.at("aut").get<int>()});
    }
    const auto& params = j.at("params");
    if (!params.at("lambda").is_null()) pkg.params.lambda = params.at("lambda").get<long long>();
    if (!params.at("tau").is_null()) pkg.params.tau = params.at("tau").get<long long>();
    if (!params.at("alpha").is_null()) pkg.params.alpha = params.at("alpha").get<long long>();
    if (!params.at("psi").is_null()) pkg.params.psi = params.at("psi").get<int>();
    (void)n;
    return pkg;
}

}  // namespace relcx

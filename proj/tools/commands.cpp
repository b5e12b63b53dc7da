#include "commands.hpp"

#include <algorithm>
#include <sstream>

#include "qtoric/atlas.hpp"
#include "qtoric/moduli.hpp"

namespace qtoric::cli {

namespace {

using Handler = Result (*)(const std::vector<json>&, const Options&);

const json& input(const std::vector<json>& in, size_t k)
{
    if (in.size() <= k)
        throw InputError("command needs " + std::to_string(k + 1) + " input file(s)");
    return in[k];
}

FanFile fan_file(const std::vector<json>& in, size_t k = 0)
{
    FanFile f = parse_fan_file(input(in, k));
    if (!f.fan)
        throw InputError("input has no fan");
    return f;
}

std::string option(const Options& o, const std::string& key)
{
    auto it = o.find(key);
    if (it == o.end() || it->second.empty())
        throw InputError("missing option --" + key);
    return it->second;
}

// Options refer to parameters by name; each name becomes transcendental.
Scalar option_scalar(const Options& o, const std::string& key)
{
    try {
        return parse_scalar(option(o, key));
    } catch (const InputError&) {
        throw;
    } catch (const std::exception& e) {
        throw InputError("cannot parse --" + key + ": " + e.what());
    }
}

json option_json(const Options& o, const std::string& key)
{
    try {
        return json::parse(option(o, key));
    } catch (const json::parse_error& e) {
        throw InputError("--" + key + " is not valid JSON: " + e.what());
    }
}

Witness option_witness(const Options& o)
{
    Witness w;
    auto it = o.find("witness");
    if (it == o.end())
        return w;
    std::stringstream ss(it->second);
    std::string item;
    while (std::getline(ss, item, ',')) {
        auto eq = item.find('=');
        if (eq == std::string::npos)
            throw InputError("--witness expects name=value pairs");
        mpq_class q(item.substr(eq + 1));
        q.canonicalize();
        w.values[item.substr(0, eq)] = q;
    }
    return w;
}

Complex option_complex(const Options& o, const std::string& key)
{
    json j = option_json(o, key);
    if (!j.is_array() || j.size() != 2)
        throw InputError("--" + key + " expects [re, im]");
    ParamTable none;
    auto part = [&](const json& x) {
        return x.is_string() ? parse_scalar(x.get<std::string>()) : parse_number(x, none);
    };
    return {part(j[0]), part(j[1])};
}

json report_json(const ValidationReport& r) { return {{"valid", r.valid}, {"violations", r.violations}}; }

json comb_json(const CombType& D)
{
    return {{"p", D.p}, {"cones", index_json(std::vector<Cone>(D.cones.begin(), D.cones.end()))}};
}

CalibratedFan calibrated_or_trivial(const FanFile& f)
{
    if (f.calibration)
        return f.calibrated();
    return make_calibrated_fan(trivial_calibration(*f.fan), f.fan->cones);
}

json lvmb_json(const LVMBDatum& d)
{
    json pts = json::array();
    for (const auto& p : d.points)
        pts.push_back(to_json(p));
    return {{"m", d.m}, {"Lambda", pts}, {"E", index_json(d.E)}};
}

LVMBDatum lvmb_of(const FanFile& f)
{
    if (!f.lvmb)
        throw InputError("input has no lvmb block");
    return *f.lvmb;
}

Result cmd_validate(const std::vector<json>& in, const Options&)
{
    FanFile f = fan_file(in);
    ValidationReport r = f.calibration ? validate_calibrated_fan(f.calibrated(), f.witness)
                                       : validate_fan(*f.fan, f.witness);
    return {report_json(r), r.valid ? Ok : False};
}

Result cmd_properties(const std::vector<json>& in, const Options&)
{
    FanFile f = fan_file(in);
    FanProperties p = fan_properties(*f.fan, f.witness);
    return {{{"irrational", p.irrational},
             {"complete", p.complete},
             {"gamma_complete", p.gamma_complete},
             {"polytopal", p.polytopal}},
            Ok};
}

Result cmd_comb_type(const std::vector<json>& in, const Options&)
{
    return {comb_json(comb_type(*fan_file(in).fan)), Ok};
}

Result cmd_comb_equiv(const std::vector<json>& in, const Options&)
{
    CombType D = comb_type(*fan_file(in, 0).fan), Dp = comb_type(*fan_file(in, 1).fan);
    auto s = comb_equivalent(D, Dp);
    json r = {{"equivalent", s.has_value()}};
    if (s)
        r["permutation"] = index_json(*s);
    return {r, s ? Ok : False};
}

Result cmd_standardize(const std::vector<json>& in, const Options&)
{
    FanFile f = fan_file(in);
    FanFile out = f;
    json extra;
    if (f.calibration) {
        StandardCalibration sc = standardize_calibration(f.calibrated());
        out.fan = sc.cf.fan;
        out.calibration = sc.cf.h;
        extra = {{"iso", to_json(sc.iso)}, {"order", index_json(sc.order)}};
    } else {
        StandardForm sf = standardize_fan(*f.fan);
        out.fan = sf.fan;
        extra = {{"L", to_json(sf.L)}, {"ray_perm", index_json(sf.ray_perm)}};
    }
    out.lvmb.reset();
    json r = to_json(out);
    r["transform"] = extra;
    return {r, Ok};
}

json morphism_block(const std::vector<json>& in, const Options& o)
{
    if (o.count("map")) {
        const std::string& m = o.at("map");
        try {
            return json::parse(m);
        } catch (const json::parse_error& e) {
            throw InputError(std::string("--map is not valid JSON: ") + e.what());
        }
    }
    if (input(in, 0).contains("morphism"))
        return in[0].at("morphism");
    return json();
}

Result cmd_morphism_check(const std::vector<json>& in, const Options& o)
{
    FanFile src = fan_file(in, 0), dst = fan_file(in, 1);
    json m = morphism_block(in, o);
    if (!m.is_object() || !m.contains("L"))
        throw InputError("morphism-check needs a map with L");
    ParamTable table = src.table;
    table.insert(dst.table.begin(), dst.table.end());
    Matrix L = parse_matrix(m.at("L"), table);
    bool iso = o.count("iso") && o.at("iso") == "true";
    Check c = iso ? check_fan_iso(L, *src.fan, *dst.fan, src.witness)
                  : check_fan_morphism(L, *src.fan, *dst.fan, src.witness);
    return {{{"valid", c.valid}, {"reason", c.reason}}, c.valid ? Ok : False};
}

Result cmd_cal_morphism_check(const std::vector<json>& in, const Options& o)
{
    FanFile src = fan_file(in, 0), dst = fan_file(in, 1);
    CalibratedFan a = src.calibrated(), b = dst.calibrated();
    ParamTable table = src.table;
    table.insert(dst.table.begin(), dst.table.end());
    Witness w = src.witness;
    w.values.insert(dst.witness.values.begin(), dst.witness.values.end());
    json m = morphism_block(in, o);
    std::optional<Matrix> L;
    if (m.is_object() && m.contains("L"))
        L = parse_matrix(m.at("L"), table);
    if (m.is_object() && m.contains("H")) {
        CalMorphism cm{*L, parse_int_matrix(m.at("H")), {}};
        if (m.contains("s"))
            for (const auto& [k, v] : m.at("s").items())
                cm.s[std::stoi(k) - 1] = v.get<int>() - 1;
        Check c = check_cal_morphism(cm, a, b, w);
        return {{{"valid", c.valid}, {"reason", c.reason}}, c.valid ? Ok : False};
    }
    auto found = find_cal_morphism(L, a, b, w);
    json r = {{"found", found.has_value()}};
    if (found)
        r["morphism"] = to_json(*found);
    return {r, found ? Ok : False};
}

Result cmd_atlas(const std::vector<json>& in, const Options&)
{
    FanFile f = fan_file(in);
    Atlas at = build_atlas(*f.fan);
    json charts = json::array();
    for (const auto& c : at.cones)
        charts.push_back({{"cone", index_json(c)}, {"A", to_json(at.charts.at(c))}});
    json gluings = json::array();
    for (const auto& [key, M] : at.gluings)
        gluings.push_back({{"from", index_json(key.first)},
                           {"to", index_json(key.second)},
                           {"exponents", to_json(M)},
                           {"map", render_monomials(M)}});
    bool ok = cocycle_check(at);
    json r = {{"charts", charts}, {"gluings", gluings}, {"cocycle", ok}};
    try {
        CalibratedFan cf = calibrated_or_trivial(f);
        json hb = json::array();
        for (const auto& c : at.cones) {
            ChartCalibration cc = chart_calibration(cf, c);
            hb.push_back({{"cone", index_json(c)},
                          {"order", index_json(cc.order)},
                          {"hbar", to_json(cc.hbar)}});
        }
        r["chart_calibrations"] = hb;
    } catch (const Error& e) {
        if (e.code() != Errc::NotGammaComplete)
            throw;
        r["chart_calibrations"] = nullptr;
    }
    return {r, ok ? Ok : False};
}

Result cmd_irrelevant(const std::vector<json>& in, const Options&)
{
    FanFile f = fan_file(in);
    IrrelevantDescriptor S = f.calibration ? build_irrelevant(f.calibrated()) : build_irrelevant(*f.fan);
    return {{{"n", S.n}, {"forbidden", index_json(S.forbidden)}, {"cones", index_json(S.cones)}}, Ok};
}

Result cmd_gale(const std::vector<json>& in, const Options& o)
{
    FanFile f = fan_file(in);
    Calibration h = calibrated_or_trivial(f).h;
    bool affine = o.count("affine") && o.at("affine") == "true";
    GaleData g;
    if (affine) {
        std::vector<Vector> vbar = h.images;
        Vector last(h.dim());
        for (const auto& v : h.images)
            last = last - v;
        vbar.push_back(last);
        auto norm = o.count("normalization") && o.at("normalization") == "tail" ? GaleNormalization::TailIdentity
                                                                              : GaleNormalization::LeftmostPivots;
        g = gale_affine(vbar, norm);
    } else {
        g = gale_linear(h);
    }
    json A = json::array();
    for (const auto& a : g.A)
        A.push_back(to_json(a));
    return {{{"A", A},
             {"affine", affine},
             {"normalization",
              g.normalization == GaleNormalization::TailIdentity ? "tail" : "leftmost-pivots"}},
            Ok};
}

Result cmd_lvmb_build(const std::vector<json>& in, const Options&)
{
    FanFile f = fan_file(in);
    LVMBDatum d = build_lvmb(calibrated_or_trivial(f));
    ValidationReport r = check_lvmb(d, f.witness);
    FanFile out;
    out.params = f.params;
    out.witness = f.witness;
    out.lvmb = d;
    json j = to_json(out);
    j["indispensable"] = index_json(d.indispensable());
    j["check"] = report_json(r);
    return {j, r.valid ? Ok : False};
}

Result cmd_lvmb_check(const std::vector<json>& in, const Options&)
{
    FanFile f = parse_fan_file(input(in, 0));
    LVMBDatum d = lvmb_of(f);
    ValidationReport r = check_lvmb(d, f.witness);
    json j = report_json(r);
    j["indispensable"] = index_json(d.indispensable());
    return {j, r.valid ? Ok : False};
}

Result cmd_lvm_check(const std::vector<json>& in, const Options&)
{
    FanFile f = parse_fan_file(input(in, 0));
    LVMBDatum d = lvmb_of(f);
    LvmReport r = check_lvm(d.points, d.m, f.witness);
    bool ok = r.siegel && r.weak_hyperbolic;
    return {{{"siegel", r.siegel}, {"weak_hyperbolic", r.weak_hyperbolic}, {"E", index_json(r.E)}}, ok ? Ok : False};
}

Result cmd_polytope(const std::vector<json>& in, const Options&)
{
    FanFile f = parse_fan_file(input(in, 0));
    LVMBDatum d = lvmb_of(f);
    PolytopeFaces pf = d.E.empty() ? polytope_faces(d.points, d.m, f.witness) : polytope_faces(d);
    json facets = json::array();
    for (int i : pf.facets)
        facets.push_back(i + 1);
    return {{{"faces", index_json(pf.faces)},
             {"vertices", index_json(pf.vertices)},
             {"facets", facets},
             {"facet_count", pf.facets.size()}},
            Ok};
}

Result cmd_kh_check(const std::vector<json>& in, const Options&)
{
    FanFile f = parse_fan_file(input(in, 0));
    return {{{"verdict", kh_name(condition_KH(lvmb_of(f).points))}}, Ok};
}

Result cmd_lvmb_to_fan(const std::vector<json>& in, const Options&)
{
    FanFile f = parse_fan_file(input(in, 0));
    CalibratedFan cf = lvmb_to_fan(lvmb_of(f));
    FanFile out;
    out.params = f.params;
    out.witness = f.witness;
    out.fan = cf.fan;
    out.calibration = cf.h;
    return {to_json(out), Ok};
}

Result cmd_moduli_act(const std::vector<json>&, const Options& o)
{
    json hj = option_json(o, "hbar");
    ParamTable none;
    std::vector<Vector> rows;
    for (const auto& r : hj) {
        Vector v;
        for (const auto& x : r)
            v.push_back(x.is_string() ? parse_scalar(x.get<std::string>()) : parse_number(x, none));
        rows.push_back(v);
    }
    Matrix hbar = Matrix::from_rows(rows, rows.empty() ? 0 : rows[0].size());
    IntMatrix H = parse_int_matrix(option_json(o, "H"));
    return {{{"hbar", to_json(torus_act(hbar, H))}}, Ok};
}

Result cmd_moduli_equiv_2d(const std::vector<json>&, const Options& o)
{
    Scalar a = option_scalar(o, "a"), b = option_scalar(o, "b");
    auto H = torus_equiv_2d(a, b);
    json r = {{"equivalent", H.has_value()}};
    if (H)
        r["H"] = to_json(*H);
    return {r, H ? Ok : False};
}

Result cmd_p2_orbit(const std::vector<json>&, const Options& o)
{
    OrbitReport r = p2_orbit(option_scalar(o, "a"), option_scalar(o, "b"), option_witness(o));
    json orbit = json::array();
    for (const auto& p : r.orbit)
        orbit.push_back({{"element", p.element}, {"point", to_json(p.value)}});
    return {{{"canonical", to_json(r.canonical)},
             {"element", r.element},
             {"orbit", orbit},
             {"isotropy", r.isotropy},
             {"isotropy_group", r.isotropy_group}},
            Ok};
}

Result cmd_wps_weights(const std::vector<json>&, const Options& o)
{
    Weights w = wps_weights(option_scalar(o, "a"), option_scalar(o, "b"));
    auto num = [](const mpz_class& x) { return x.fits_slong_p() ? json(x.get_si()) : json(x.get_str()); };
    return {{{"weights", {num(w.alpha), num(w.beta), num(w.gamma)}}}, Ok};
}

Result cmd_hopf_equiv(const std::vector<json>&, const Options& o)
{
    HopfReport r = hopf_equiv(option_complex(o, "l3"), option_complex(o, "l4"), option_complex(o, "m3"),
                              option_complex(o, "m4"), option_witness(o));
    json lv = json::array();
    for (const auto& x : r.lattice_vector)
        lv.push_back(x.get_str());
    return {{{"equivalent", r.equivalent}, {"switched", r.switched}, {"lattice_vector", lv}, {"isotropy", r.isotropy}},
            r.equivalent ? Ok : False};
}

const std::vector<std::pair<std::string, Handler>>& table()
{
    static const std::vector<std::pair<std::string, Handler>> t = {
        {"validate", cmd_validate},
        {"properties", cmd_properties},
        {"comb-type", cmd_comb_type},
        {"comb-equiv", cmd_comb_equiv},
        {"standardize", cmd_standardize},
        {"morphism-check", cmd_morphism_check},
        {"cal-morphism-check", cmd_cal_morphism_check},
        {"atlas", cmd_atlas},
        {"irrelevant", cmd_irrelevant},
        {"gale", cmd_gale},
        {"lvmb-build", cmd_lvmb_build},
        {"lvmb-check", cmd_lvmb_check},
        {"lvm-check", cmd_lvm_check},
        {"polytope", cmd_polytope},
        {"kh-check", cmd_kh_check},
        {"lvmb-to-fan", cmd_lvmb_to_fan},
        {"moduli-act", cmd_moduli_act},
        {"moduli-equiv-2d", cmd_moduli_equiv_2d},
        {"p2-orbit", cmd_p2_orbit},
        {"wps-weights", cmd_wps_weights},
        {"hopf-equiv", cmd_hopf_equiv},
    };
    return t;
}

Result error_result(const std::string& code, const std::string& message, int exit)
{
    return {{{"error", {{"code", code}, {"message", message}}}}, exit};
}

} // namespace

const std::vector<std::string>& command_names()
{
    static const std::vector<std::string> names = [] {
        std::vector<std::string> n;
        for (const auto& [name, h] : table())
            n.push_back(name);
        return n;
    }();
    return names;
}

Result run(const std::string& command, const std::vector<json>& inputs, const Options& opts)
{
    auto it = std::find_if(table().begin(), table().end(), [&](const auto& p) { return p.first == command; });
    if (it == table().end())
        return error_result("UnknownCommand", "unknown command " + command, BadInput);
    try {
        return it->second(inputs, opts);
    } catch (const Error& e) {
        return error_result(errc_name(e.code()), e.what(), e.code() == Errc::Indeterminate ? Undecided : BadInput);
    } catch (const InputError& e) {
        return error_result("InvalidInput", e.what(), BadInput);
    } catch (const json::exception& e) {
        return error_result("InvalidInput", e.what(), BadInput);
    } catch (const std::exception& e) {
        return error_result("InvalidInput", e.what(), BadInput);
    }
}

} // namespace qtoric::cli

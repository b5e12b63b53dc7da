#include "qtoric/io.hpp"

#include <algorithm>

namespace qtoric {

namespace {

const json& require(const json& j, const char* key)
{
    if (!j.is_object() || !j.contains(key))
        throw InputError(std::string("missing key \"") + key + "\"");
    return j.at(key);
}

void require_array(const json& j, const std::string& what)
{
    if (!j.is_array())
        throw InputError(what + " must be an array");
}

QuantumFan parse_fan(const json& j, const FanFile& f, const std::optional<Calibration>& h)
{
    QuantumFan fan;
    if (j.contains("rays")) {
        require_array(j.at("rays"), "fan.rays");
        for (const auto& r : j.at("rays"))
            fan.rays.push_back(parse_vector(r, f.table));
    } else if (h) {
        for (int i : h->I)
            fan.rays.push_back(h->images[i]);
    } else {
        throw InputError("fan.rays is required without a calibration");
    }
    require_array(require(j, "cones"), "fan.cones");
    for (const auto& c : j.at("cones"))
        fan.cones.push_back(parse_index_set(c));
    for (const auto& c : fan.cones)
        for (int i : c)
            if (i < 0 || size_t(i) >= fan.rays.size())
                throw InputError("cone index out of range");
    return fan;
}

Calibration parse_calibration(const json& j, const FanFile& f, const json& fan_block)
{
    Calibration h;
    require_array(require(j, "images"), "calibration.images");
    for (const auto& v : j.at("images"))
        h.images.push_back(parse_vector(v, f.table));
    if (j.contains("J"))
        h.J = parse_index_set(j.at("J"));
    std::sort(h.J.begin(), h.J.end());
    for (int i : h.J)
        if (i < 0 || size_t(i) >= h.n())
            throw InputError("virtual index out of range");
    if (j.contains("I")) {
        h.I = parse_index_set(j.at("I"));
    } else if (fan_block.is_object() && fan_block.contains("rays")) {
        // match each ray with the first unused non-virtual image equal to it
        for (const auto& r : fan_block.at("rays")) {
            Vector ray = parse_vector(r, f.table);
            int found = -1;
            for (size_t i = 0; i < h.n() && found < 0; ++i)
                if (!h.is_virtual(int(i)) && std::find(h.I.begin(), h.I.end(), int(i)) == h.I.end() &&
                    h.images[i] == ray)
                    found = int(i);
            if (found < 0)
                throw InputError("ray without a matching calibration image");
            h.I.push_back(found);
        }
    } else {
        for (size_t i = 0; i < h.n(); ++i)
            if (!h.is_virtual(int(i)))
                h.I.push_back(int(i));
    }
    for (int i : h.I)
        if (i < 0 || size_t(i) >= h.n())
            throw InputError("generator index out of range");
    return h;
}

LVMBDatum parse_lvmb(const json& j, const FanFile& f)
{
    LVMBDatum d;
    d.m = require(j, "m").get<size_t>();
    require_array(require(j, "Lambda"), "lvmb.Lambda");
    for (const auto& p : j.at("Lambda")) {
        d.points.push_back(parse_vector(p, f.table));
        if (d.points.back().size() != 2 * d.m)
            throw InputError("each Lambda point needs 2m real coordinates");
    }
    if (j.contains("E"))
        for (const auto& e : j.at("E"))
            d.E.push_back(parse_index_set(e));
    return d;
}

} // namespace

CalibratedFan FanFile::calibrated() const
{
    if (!calibration || !fan)
        throw InputError("a fan with a calibration is required");
    CalibratedFan cf = make_calibrated_fan(*calibration, fan->cones);
    if (cf.fan.rays.size() != fan->rays.size())
        throw InputError("calibration generators do not match the rays");
    return cf;
}

Scalar parse_number(const json& j, const ParamTable& table)
{
    if (j.is_number_integer())
        return Scalar(mpq_class(j.get<long>()));
    if (!j.is_string())
        throw InputError("numbers must be exact strings, got " + j.dump());
    try {
        return parse_scalar(j.get<std::string>(), &table);
    } catch (const std::exception& e) {
        throw InputError("cannot parse number \"" + j.get<std::string>() + "\": " + e.what());
    }
}

Vector parse_vector(const json& j, const ParamTable& table)
{
    require_array(j, "vector");
    Vector v;
    for (const auto& x : j)
        v.push_back(parse_number(x, table));
    return v;
}

Matrix parse_matrix(const json& j, const ParamTable& table)
{
    require_array(j, "matrix");
    std::vector<Vector> rows;
    for (const auto& r : j)
        rows.push_back(parse_vector(r, table));
    size_t cols = rows.empty() ? 0 : rows[0].size();
    for (const auto& r : rows)
        if (r.size() != cols)
            throw InputError("ragged matrix");
    return Matrix::from_rows(rows, cols);
}

IntMatrix parse_int_matrix(const json& j)
{
    require_array(j, "integer matrix");
    IntMatrix m;
    for (const auto& r : j) {
        require_array(r, "integer matrix row");
        IntVector row;
        for (const auto& x : r) {
            if (x.is_number_integer())
                row.push_back(mpz_class(x.get<long>()));
            else if (x.is_string())
                row.push_back(mpz_class(x.get<std::string>()));
            else
                throw InputError("integer matrix entries must be integers");
        }
        m.push_back(row);
    }
    return m;
}

Cone parse_index_set(const json& j)
{
    require_array(j, "index set");
    Cone c;
    for (const auto& x : j) {
        if (!x.is_number_integer() || x.get<long>() < 1)
            throw InputError("indices are positive integers (1-based)");
        c.push_back(int(x.get<long>()) - 1);
    }
    return c;
}

void parse_parameters(const json& j, FanFile& f)
{
    if (j.contains("parameters")) {
        require_array(j.at("parameters"), "parameters");
        for (const auto& p : j.at("parameters")) {
            ParamDecl d;
            if (p.is_string()) {
                d.name = p.get<std::string>();
            } else {
                d.name = require(p, "name").get<std::string>();
                if (p.contains("square"))
                    d.square = mpq_class(p.at("square").get<std::string>());
            }
            if (d.square) {
                d.square->canonicalize();
                if (*d.square <= 0)
                    throw InputError("quadratic parameter " + d.name + " needs a positive square");
                f.table[d.name] = quadratic(d.name, *d.square);
            } else {
                f.table[d.name] = transcendental(d.name);
            }
            f.params.push_back(d);
        }
    }
    if (j.contains("witness"))
        for (const auto& [name, value] : j.at("witness").items()) {
            mpq_class q(value.is_string() ? value.get<std::string>() : std::to_string(value.get<long>()));
            q.canonicalize();
            f.witness.values[name] = q;
        }
    for (const auto& d : f.params)
        if (!d.square && !f.witness.values.count(d.name))
            throw InputError("witness value missing for parameter " + d.name);
}

FanFile parse_fan_file(const json& j)
{
    if (!j.is_object())
        throw InputError("input must be a JSON object");
    FanFile f;
    f.version = j.value("version", 1);
    parse_parameters(j, f);
    json fan_block = j.value("fan", json());
    if (j.contains("calibration"))
        f.calibration = parse_calibration(j.at("calibration"), f, fan_block);
    if (!fan_block.is_null()) {
        f.fan = parse_fan(fan_block, f, f.calibration);
        size_t d = f.fan->rays.empty() ? 0 : f.fan->rays[0].size();
        if (j.contains("qlattice")) {
            const json& q = j.at("qlattice");
            f.fan->gamma.dim = q.value("dim", d);
            for (const auto& g : require(q, "generators"))
                f.fan->gamma.generators.push_back(parse_vector(g, f.table));
        } else if (f.calibration) {
            f.fan->gamma.dim = f.calibration->dim();
            f.fan->gamma.generators = f.calibration->images;
        } else {
            if (fan_block.contains("dim"))
                d = fan_block.at("dim").get<size_t>();
            f.fan->gamma = QLattice::standard(d);
            for (const auto& r : f.fan->rays)
                f.fan->gamma.generators.push_back(r);
        }
        for (const auto& r : f.fan->rays)
            if (r.size() != f.fan->gamma.dim)
                throw InputError("ray of the wrong dimension");
    }
    if (j.contains("lvmb"))
        f.lvmb = parse_lvmb(j.at("lvmb"), f);
    if (j.contains("morphism"))
        f.morphism = j.at("morphism");
    return f;
}

json to_json(const Scalar& s) { return s.str(); }

json to_json(const Vector& v)
{
    json a = json::array();
    for (const auto& x : v)
        a.push_back(to_json(x));
    return a;
}

json to_json(const Matrix& m)
{
    json a = json::array();
    for (size_t i = 0; i < m.rows(); ++i)
        a.push_back(to_json(m.row(i)));
    return a;
}

json to_json(const IntMatrix& m)
{
    json a = json::array();
    for (const auto& r : m) {
        json row = json::array();
        for (const auto& x : r)
            if (x.fits_slong_p())
                row.push_back(x.get_si());
            else
                row.push_back(x.get_str());
        a.push_back(row);
    }
    return a;
}

json index_json(const Cone& c)
{
    json a = json::array();
    for (int i : c)
        a.push_back(i + 1);
    return a;
}

json index_json(const std::vector<Cone>& cs)
{
    json a = json::array();
    for (const auto& c : cs)
        a.push_back(index_json(c));
    return a;
}

json to_json(const CalMorphism& m)
{
    json s = json::object();
    for (auto [j, jp] : m.s)
        s[std::to_string(j + 1)] = jp + 1;
    return {{"L", to_json(m.L)}, {"H", to_json(m.H)}, {"s", s}};
}

json to_json(const FanFile& f)
{
    json j;
    j["version"] = f.version;
    if (!f.params.empty()) {
        json ps = json::array();
        for (const auto& d : f.params) {
            if (d.square)
                ps.push_back({{"name", d.name}, {"square", d.square->get_str()}});
            else
                ps.push_back(d.name);
        }
        j["parameters"] = ps;
        json w = json::object();
        for (const auto& [k, v] : f.witness.values)
            w[k] = v.get_str();
        j["witness"] = w;
    }
    if (f.fan) {
        json q;
        q["dim"] = f.fan->gamma.dim;
        json gens = json::array();
        for (const auto& g : f.fan->gamma.generators)
            gens.push_back(to_json(g));
        q["generators"] = gens;
        j["qlattice"] = q;
        json rays = json::array();
        for (const auto& r : f.fan->rays)
            rays.push_back(to_json(r));
        j["fan"] = {{"rays", rays}, {"cones", index_json(f.fan->cones)}};
    }
    if (f.calibration) {
        json imgs = json::array();
        for (const auto& v : f.calibration->images)
            imgs.push_back(to_json(v));
        j["calibration"] = {{"images", imgs}, {"J", index_json(f.calibration->J)}, {"I", index_json(f.calibration->I)}};
    }
    if (f.lvmb) {
        json pts = json::array();
        for (const auto& p : f.lvmb->points)
            pts.push_back(to_json(p));
        j["lvmb"] = {{"m", f.lvmb->m}, {"Lambda", pts}, {"E", index_json(f.lvmb->E)}};
    }
    return j;
}

const char* fan_file_schema()
{
    return R"({
  "$schema": "https://json-schema.org/draft/2020-12/schema",
  "title": "qtoric input file",
  "type": "object",
  "$defs": {
    "number": {"type": ["string", "integer"],
               "description": "exact value: \"3\", \"-1/2\", \"sqrt:2\", \"sqrt(2)\", \"(a+1)/b\""},
    "vector": {"type": "array", "items": {"$ref": "#/$defs/number"}},
    "indices": {"type": "array", "items": {"type": "integer", "minimum": 1}}
  },
  "properties": {
    "version": {"const": 1},
    "parameters": {"type": "array", "items": {"oneOf": [
      {"type": "string", "description": "transcendental parameter"},
      {"type": "object", "required": ["name", "square"],
       "properties": {"name": {"type": "string"}, "square": {"type": "string"}},
       "description": "quadratic parameter t with t^2 = square"}]}},
    "witness": {"type": "object", "additionalProperties": {"type": ["string", "integer"]},
                "description": "rational value for every transcendental parameter"},
    "qlattice": {"type": "object", "required": ["generators"],
                 "properties": {"dim": {"type": "integer"},
                                "generators": {"type": "array", "items": {"$ref": "#/$defs/vector"}}}},
    "fan": {"type": "object", "required": ["cones"],
            "properties": {"dim": {"type": "integer"},
                           "rays": {"type": "array", "items": {"$ref": "#/$defs/vector"}},
                           "cones": {"type": "array", "items": {"$ref": "#/$defs/indices"}}}},
    "calibration": {"type": "object", "required": ["images"],
                    "properties": {"images": {"type": "array", "items": {"$ref": "#/$defs/vector"}},
                                   "J": {"$ref": "#/$defs/indices"},
                                   "I": {"$ref": "#/$defs/indices"}}},
    "lvmb": {"type": "object", "required": ["m", "Lambda"],
             "properties": {"m": {"type": "integer", "minimum": 1},
                            "Lambda": {"type": "array", "items": {"$ref": "#/$defs/vector"}},
                            "E": {"type": "array", "items": {"$ref": "#/$defs/indices"}}}},
    "morphism": {"type": "object",
                 "properties": {"L": {"type": "array", "items": {"$ref": "#/$defs/vector"}},
                                "H": {"type": "array", "items": {"type": "array"}},
                                "s": {"type": "object", "additionalProperties": {"type": "integer"}}}}
  }
}
)";
}

} // namespace qtoric

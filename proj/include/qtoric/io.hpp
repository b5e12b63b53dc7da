#pragma once

// JSON file format shared by the command-line tool and the tests. Numbers are
// exact strings ("-1/2", "sqrt:2", "(a+1)/b"); indices are 1-based.

#include <optional>
#include <string>

#include <json.hpp>

#include "qtoric/gale.hpp"
#include "qtoric/morphism.hpp"

namespace qtoric {

using nlohmann::json;

// Malformed input: wrong shape, undeclared parameter, missing witness value.
class InputError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

struct ParamDecl {
    std::string name;
    std::optional<mpq_class> square; // quadratic parameter t^2 = square
};

struct FanFile {
    int version = 1;
    std::vector<ParamDecl> params;
    ParamTable table;
    Witness witness;
    std::optional<QuantumFan> fan;
    std::optional<Calibration> calibration;
    std::optional<LVMBDatum> lvmb;
    json morphism; // optional map block, kept raw

    CalibratedFan calibrated() const; // throws InputError without a calibration
};

FanFile parse_fan_file(const json& j);
json to_json(const FanFile& f);

// Declares parameters and witness values from the "parameters" and "witness" keys.
void parse_parameters(const json& j, FanFile& f);

Scalar parse_number(const json& j, const ParamTable& table);
Vector parse_vector(const json& j, const ParamTable& table);
Matrix parse_matrix(const json& j, const ParamTable& table);
IntMatrix parse_int_matrix(const json& j);
Cone parse_index_set(const json& j); // 1-based in, 0-based out

json to_json(const Scalar& s);
json to_json(const Vector& v);
json to_json(const Matrix& m);
json to_json(const IntMatrix& m);
json index_json(const Cone& c); // 0-based in, 1-based out
json index_json(const std::vector<Cone>& cs);
json to_json(const CalMorphism& m);

// JSON Schema of the input file.
const char* fan_file_schema();

} // namespace qtoric

#pragma once

#include "opm/cochains.hpp"
#include "opm/fixtures.hpp"

#include <json.hpp>

#include <optional>
#include <string>

namespace opm::io {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

// Malformed input. `path` is a JSON pointer into the document ("/algebra/degrees/2").
class ParseError : public PreconditionError {
  public:
    ParseError(const std::string& path, const std::string& what)
        : PreconditionError((path.empty() ? "/" : path) + ": " + what), path_(path) {}
    const std::string& path() const { return path_; }

  private:
    std::string path_;
};

// Scalars: decimal integers, "a/b", or coefficient lists "[c0,c1,...]" over Q[t].
// Bare JSON integers are accepted on input.
Scalar scalar_from_json(const RingSpec& R, const json& j, const std::string& path);
ordered_json to_json(const Scalar& s);
ordered_json to_json(const Vec& v);
ordered_json to_json(const PresentedModule& M);
ordered_json to_json(const Report& r);

// {"window": [lo, hi], "degrees": {"q": [labels]}, "differential": {"q": rows},
//  "products": [[left, right, {label: c}]], "unit": label}
// d_q has dim(q-1) rows and dim(q) columns. Labels are unique across degrees.
DGAlgebra algebra_from_json(const RingSpec& R, const OperadPreset& O, const json& j, const std::string& path);
ordered_json algebra_to_json(const DGAlgebra& A);

// {"window": [lo, hi], "generators": [[name, degree]], "differential": {name: expr},
//  "quotient": bool, "relations": [expr]} with expr = [[c, [g1, g2, ..]], ..].
AlgebraPresentation presentation_from_json(const RingSpec& R, const OperadPreset& O, const json& j,
                                           const std::string& path);

// {"hmax": h, "vertical": [lo, hi], "exhaustive": b, "basis": [[label, h, v]],
//  "d1" / "d2": {x: {y: c}}, "mu0" / "mu1": [[x, y, {z: c}]], "gamma0": [[x, y, z, {w: c}]],
//  "morphism": {"f1_0" / "f1_1" / "f1_2": {x: {a: c}}, "fmu_0" / "fmu_1": [[x, y, {a: c}]]}}
// Morphism values are elements of the target algebra named by its labels.
fixtures::FragmentFixture fragment_from_json(const DGAlgebra& target, const json& j, const std::string& path);
ordered_json fragment_to_json(const fixtures::FragmentFixture& F);

// An element of A_q written as "label", "c*label" or a sum of those with '+'.
Vec element_from_text(const DGAlgebra& A, const std::string& text, int& degree);

}  // namespace opm::io

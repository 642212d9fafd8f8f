#pragma once

#include <string>
#include <variant>

#include "friedlab/detect.hpp"
#include "friedlab/model.hpp"
#include "friedlab/pwmodel.hpp"
#include "friedlab/recon.hpp"
#include "friedlab/scan.hpp"
#include "json.hpp"

namespace friedlab::io {

using json = nlohmann::ordered_json;

// complex scalars are [re, im]; a bare number is read as real
json to_json(cplx z);
cplx complex_from_json(const json& j);

// {"num": [c0, c1, ...], "poles": [{"at": z, "order": k}, ...]}
// or, on input only, {"terms": [{"pole": z, "order": k, "coeff": c}], "poly": [...]}
json to_json(const RatFun& f);
RatFun ratfun_from_json(const json& j);

// [{"interval": [a, b], "kind": "indicator", "value": c},
//  {"interval": [a, b], "kind": "rational-restriction", "rational": RatFun},
//  {"interval": [a, b], "kind": "reciprocal-cauchy-of", "source": [c, d], "value": c}]
json to_json(const PiecewiseFun& f);
PiecewiseFun piecewise_from_json(const json& j);

// {"type": "rational" | "piecewise", "phi": ..., "psi": ..., "B": c}; type defaults to rational
using AnyModel = std::variant<FriedrichsModel, PiecewiseModel>;
json to_json(const FriedrichsModel& m);
json to_json(const PiecewiseModel& m);
AnyModel model_from_json(const json& j);

// argument that is either inline JSON or a path to a JSON file
json load_json_arg(const std::string& arg);

json to_json(const MValue& v);
json to_json(const DomainElement& e);
json to_json(const DefectReport& r);
json to_json(const ToeplitzReport& r);
json to_json(const DisjointReport& r);
json to_json(const JumpReport& r);
json to_json(const SpectrumReport& r);
json to_json(const RecoveryResult& r);
json transcript_json(const ResolventOracle& o);
json to_json(const VerifyReport& r);
json to_json(const CurveTrace& c);
json to_json(const Figure2Report& r);

void write_file(const std::string& path, const std::string& text);

}  // namespace friedlab::io

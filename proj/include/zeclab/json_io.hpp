#pragma once

#include <string>

#include <json.hpp>

#include "zeclab/certbounds.hpp"
#include "zeclab/channelforge.hpp"
#include "zeclab/codecheck.hpp"
#include "zeclab/codesearch.hpp"
#include "zeclab/graphspace.hpp"
#include "zeclab/matcore.hpp"
#include "zeclab/scenarios.hpp"

namespace zeclab {

// Insertion-ordered JSON so every artifact has a stable key order.
using Json = nlohmann::ordered_json;

// Complex matrices: {"rows", "cols", "data": [[re, im], ...]} row-major.
Json to_json(const Matrix& m);
// Vectors: {"size", "data": [[re, im], ...]}.
Json to_json(const Vector& v);
Json to_json(const SubspaceBasis& s);
Json to_json(const GraphConditionReport& r);
Json to_json(const CodeCandidate& c);
Json to_json(const CodeFamily& f);
Json to_json(const KLReport& r);
Json to_json(const FamilyReport& r);
Json to_json(const BlockScalarReport& r);
Json to_json(const ChainEntry& e);
Json to_json(const Certificate& c);
Json to_json(const BoundReport& r);
Json to_json(const Amplification& a);
Json to_json(const SearchOutcome& o);
Json to_json(const ChannelBasis& b);
Json to_json(const EnvVectors& e);
Json to_json(const StinespringIsometry& v);
Json to_json(const IsometryDistance& d);
Json to_json(const CqReport& r);
Json to_json(const Corollary1Report& r);
Json to_json(const SuperactivationReport& r);

// Parsers for artifact inputs; malformed shapes raise ValidationError.
Matrix matrix_from_json(const Json& j);
Vector vector_from_json(const Json& j);
SubspaceBasis subspace_from_json(const Json& j);
CodeCandidate code_from_json(const Json& j);

// Byte-reproducible dump: fixed key order (insertion), floats at 17
// significant digits, no locale dependence.
std::string dump_deterministic(const Json& j);

}  // namespace zeclab

#ifndef ELLA_JSON_IO_HPP
#define ELLA_JSON_IO_HPP

#include <json.hpp>

#include "ella/arrangement.hpp"
#include "ella/forms.hpp"
#include "ella/intmat.hpp"
#include "ella/lattice_solve.hpp"
#include "ella/qpair.hpp"

namespace ella {

using json = nlohmann::json;

// Conventions: rationals are reduced "p/q" strings, complex numbers are
// [re, im], exact lattice scalars r + s*tau are ["p/q", "p/q"], matrices are
// row arrays.  Keys are emitted sorted, so serialization is byte-stable.

json rational_json(const rational& x);
rational rational_from(const json& j);

json qpair_json(const qpair& x);
qpair qpair_from(const json& j);

json epoint_json(const epoint& x);
epoint epoint_from(const json& j);

json cplx_json(cplx z);
cplx cplx_from(const json& j);

json intmat_json(const intmat& m);
intmat intmat_from(const json& j);

json arrangement_json(const earrangement& c);
earrangement arrangement_from(const json& j, int truncation_margin = 5);

json betti_json(const betti_report& rep);
json solutions_json(const esolutions& sol);
json snf_json(const snf_result& s);

} // namespace ella

#endif

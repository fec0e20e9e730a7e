#include "equiforms/jsonio.hpp"

#include <json.hpp>

#include <stdexcept>

namespace equiforms {

using OJson = nlohmann::ordered_json;

std::string rational_to_string(const Rational& r) {
  return r.numerator().str() + "/" + r.denominator().str();
}

Rational rational_from_string(const std::string& s) {
  auto slash = s.find('/');
  if (slash == std::string::npos) return Rational(BigInt(s));
  return Rational(BigInt(s.substr(0, slash)), BigInt(s.substr(slash + 1)));
}

namespace {

OJson constant_to_json(const ConstantScalar& c) {
  OJson out = OJson::array();
  for (const auto& [key, r] : c.terms)
    out.push_back({key.first, key.second, rational_to_string(r)});
  return out;
}

ConstantScalar constant_from_json(const OJson& j) {
  ConstantScalar c;
  for (const auto& t : j)
    c.terms[{t.at(0).get<int>(), t.at(1).get<int>()}] = rational_from_string(t.at(2));
  return c;
}

OJson smono_to_json(const SMono& m, const ConstantScalar& c) {
  OJson out;
  out["xpow"] = m.xpow;
  out["rexp"] = m.rexp;
  OJson gauss = OJson::array();
  for (const auto& g : m.gauss) gauss.push_back(rational_to_string(g));
  out["gauss"] = gauss;
  out["forders"] = m.forders;
  OJson phis = OJson::array();
  for (const auto& [id, pw] : m.phis) phis.push_back({id, pw});
  out["phis"] = phis;
  out["tpow"] = m.tpow;
  out["thpow"] = m.thpow;
  out["eith2"] = m.eith2;
  out["coef"] = constant_to_json(c);
  return out;
}

void smono_from_json(const OJson& j, SMono& m, ConstantScalar& c) {
  m.xpow = j.at("xpow").get<std::vector<int>>();
  m.rexp = j.at("rexp").get<int>();
  m.gauss.clear();
  for (const auto& g : j.at("gauss")) m.gauss.push_back(rational_from_string(g));
  m.forders = j.at("forders").get<std::vector<int>>();
  m.phis.clear();
  for (const auto& p : j.at("phis")) m.phis.emplace_back(p.at(0).get<int>(), p.at(1).get<int>());
  m.tpow = j.at("tpow").get<int>();
  m.thpow = j.at("thpow").get<int>();
  m.eith2 = j.at("eith2").get<int>();
  c = constant_from_json(j.at("coef"));
}

OJson scalar_to_json(const ScalarExpr& s) {
  OJson out = OJson::array();
  for (const auto& [m, c] : s.terms) out.push_back(smono_to_json(m, c));
  return out;
}

ScalarExpr scalar_from_json(const OJson& j, int d) {
  ScalarExpr s(d);
  for (const auto& t : j) {
    SMono m;
    ConstantScalar c;
    smono_from_json(t, m, c);
    s.terms[m] = c;
  }
  return s;
}

OJson xpoly_to_json(const XPoly& p) {
  OJson out = OJson::array();
  for (const auto& [xm, se] : p.terms) {
    OJson term;
    OJson factors = OJson::array();
    for (const auto& [kl, pw] : xm.factors) factors.push_back({kl.first, kl.second, pw});
    term["xmono"] = factors;
    term["scalar"] = scalar_to_json(se);
    out.push_back(term);
  }
  return out;
}

XPoly xpoly_from_json(const OJson& j, int d) {
  XPoly p(d);
  for (const auto& t : j) {
    XMono xm;
    for (const auto& f : t.at("xmono"))
      xm.factors.push_back({{f.at(0).get<int>(), f.at(1).get<int>()}, f.at(2).get<int>()});
    p.terms[xm] = scalar_from_json(t.at("scalar"), d);
  }
  return p;
}

OJson form_terms_to_json(const Form& a) {
  OJson out = OJson::array();
  for (const auto& [key, xp] : a.terms) {
    OJson term;
    term["dx"] = indices_of(key.dx);
    term["w"] = indices_of(key.w);
    term["e"] = indices_of(key.e);
    term["coeff"] = xpoly_to_json(xp);
    out.push_back(term);
  }
  return out;
}

Form form_terms_from_json(const OJson& j, int d) {
  Form a(d);
  for (const auto& t : j) {
    FKey key;
    key.dx = mask_of(t.at("dx").get<std::vector<int>>());
    key.w = mask_of(t.at("w").get<std::vector<int>>());
    key.e = mask_of(t.at("e").get<std::vector<int>>());
    a.terms[key] = xpoly_from_json(t.at("coeff"), d);
  }
  return a;
}

OJson parse_document(const std::string& text, const std::string& want_kind) {
  OJson doc;
  try {
    doc = OJson::parse(text);
  } catch (const std::exception& e) {
    throw std::invalid_argument(std::string("json parse: ") + e.what());
  }
  if (doc.value("schema", "") != "equiforms/1")
    throw std::invalid_argument("json parse: unknown schema");
  if (doc.value("kind", "") != want_kind)
    throw std::invalid_argument("json parse: expected kind '" + want_kind + "'");
  return doc;
}

}  // namespace

std::string form_to_json(const Form& a, const std::string& name, int indent) {
  OJson doc;
  doc["schema"] = "equiforms/1";
  doc["kind"] = "form";
  doc["dim"] = a.d;
  doc["terms"] = form_terms_to_json(a);
  if (!name.empty()) doc["meta"] = OJson{{"name", name}};
  return doc.dump(indent);
}

Form form_from_json(const std::string& text) {
  OJson doc = parse_document(text, "form");
  return form_terms_from_json(doc.at("terms"), doc.at("dim").get<int>());
}

std::string pair_to_json(const RelativePair& p, const std::string& name, int indent) {
  OJson doc;
  doc["schema"] = "equiforms/1";
  doc["kind"] = "pair";
  doc["dim"] = p.dim();
  doc["alpha"] = form_terms_to_json(p.alpha);
  doc["beta"] = form_terms_to_json(p.beta);
  if (!name.empty()) doc["meta"] = OJson{{"name", name}};
  return doc.dump(indent);
}

RelativePair pair_from_json(const std::string& text) {
  OJson doc = parse_document(text, "pair");
  int d = doc.at("dim").get<int>();
  return {form_terms_from_json(doc.at("alpha"), d),
          form_terms_from_json(doc.at("beta"), d)};
}

Form random_form(int d, std::mt19937_64& rng) {
  auto ri = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  Form out = Form::zero(d);
  int nterms = ri(1, 3);
  for (int t = 0; t < nterms; ++t) {
    ConstantScalar c = ConstantScalar::monomial(rat(ri(-4, 4), ri(1, 3)), ri(0, 1), ri(-2, 2));
    if (c.is_zero()) c = ConstantScalar::integer(1);
    ScalarExpr s = ScalarExpr::constant(d, c);
    if (ri(0, 1)) s = s * ScalarExpr::coordinate(d, ri(1, d));
    if (ri(0, 2) == 0) s = s * ScalarExpr::r_pow(d, ri(-2, 1));
    if (ri(0, 1)) s = s * ScalarExpr::gaussian(d, {Rational(0), Rational(0), Rational(ri(1, 2))});
    if (ri(0, 2) == 0) s = s * ScalarExpr::f_order(d, ri(0, 2));
    if (ri(0, 2) == 0) s = s * ScalarExpr::phi_atom(d, ri(1, 2));
    if (ri(0, 1)) s = s * ScalarExpr::t_pow(d, ri(0, 3));
    if (ri(0, 2) == 0) s = s * ScalarExpr::theta_pow(d, ri(-1, 2));
    if (ri(0, 2) == 0) s = s * ScalarExpr::eith_half(d, ri(-2, 2));
    Form piece = Form::from_scalar(s);
    if (ri(0, 1) && d >= 2) {
      int k = ri(1, d - 1), l = ri(k + 1, d);
      piece = piece.scaled_xpoly(XPoly::indeterminate(d, k, l));
    }
    int ndx = ri(0, std::min(2, d));
    for (int j = 0; j < ndx; ++j) piece = piece * Form::dx(d, ri(1, d));
    if (ri(0, 2) == 0) piece = piece * Form::e_gen(d, ri(1, d));
    if (ri(0, 3) == 0) piece = piece * Form::w_gen(d, ri(1, 2));
    out += piece;
  }
  return out;
}

}  // namespace equiforms

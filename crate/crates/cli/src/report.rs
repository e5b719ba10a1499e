//! JSON encodings of library results.
//!
//! Field elements are ascending coefficient lists in the generator, `p`-adic
//! values are digit lists under a `{p, a, N}` header, and integers that do
//! not fit in 64 bits are written as decimal strings.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde_json::{json, Map, Value};

use kummer_core::arith::{FieldElement, FieldSpec, FqPoly, PadicContext};
use kummer_core::census::CountReport;
use kummer_core::crystal::{CrystalProfile, PlaceLabel};
use kummer_core::dl::mpoly::MPoly;
use kummer_core::dl::{HodgeTable, OmegaData};
use kummer_core::engine::approx::Approx;
use kummer_core::engine::{CharPoly, EulerData, FrobeniusMatrix};

pub fn int(n: &BigInt) -> Value {
    match n.to_i64() {
        Some(v) => json!(v),
        None => json!(n.to_string()),
    }
}

pub fn ints(v: &[BigInt]) -> Value {
    Value::Array(v.iter().map(int).collect())
}

pub fn element(k: &FieldSpec, e: &FieldElement) -> Value {
    let c = k.coeffs(e);
    let len = c.iter().rposition(|&x| x != 0).map_or(0, |i| i + 1);
    json!(c[..len])
}

pub fn poly(k: &FieldSpec, f: &FqPoly) -> Value {
    Value::Array(f.iter().map(|e| element(k, e)).collect())
}

fn entry(ctx: &PadicContext, a: &Approx) -> Value {
    if a.is_zero() {
        json!({ "val": Value::Null, "unit": [], "prec": a.prec })
    } else {
        json!({ "val": a.e, "unit": ctx.digits(&a.d), "prec": a.prec })
    }
}

pub fn matrix(k: &FieldSpec, f: &FrobeniusMatrix) -> Value {
    let ctx = PadicContext::new(k, f.working).expect("working precision is valid");
    let m = &f.matrix;
    let rows: Vec<Value> =
        (0..m.rows).map(|r| Value::Array((0..m.cols).map(|c| entry(&ctx, m.get(r, c))).collect())).collect();
    json!({
        "p": k.p(),
        "a": k.degree(),
        "N": f.working,
        "source": f.source,
        "target": f.target,
        "semilinear": f.semilinear,
        "terms": f.terms,
        "precision": f.precision(),
        "min_valuation": f.min_valuation(),
        "integral": f.is_integral(),
        "entries": rows,
    })
}

pub fn char_poly(cp: &CharPoly) -> Value {
    json!({
        "j": cp.j,
        "dim": cp.dim,
        "order": cp.order,
        "char_poly": cp.integer.as_deref().map(ints),
        "char_poly_cyclotomic": cp.coeffs.iter().map(|c| ints(c)).collect::<Vec<_>>(),
        "class_norm": cp.class_norm().as_deref().map(ints),
    })
}

/// Per-eigenspace record: characteristic polynomial and `Frob_q` matrix.
pub fn eigenspace(k: &FieldSpec, cp: &CharPoly, frob: &FrobeniusMatrix, precision: u32) -> Value {
    let mut v = char_poly(cp);
    let obj = v.as_object_mut().expect("object");
    obj.insert("matrix".into(), matrix(k, frob));
    obj.insert("precision_used".into(), json!(precision));
    v
}

pub fn euler(e: &EulerData) -> Value {
    json!({ "j": e.j, "h0": e.h0, "h1": e.h1, "h2": e.h2, "chi": e.chi, "degree": e.degree })
}

pub fn profile(k: &FieldSpec, prof: &CrystalProfile) -> Value {
    let places: Vec<Value> = prof
        .places
        .iter()
        .map(|v| {
            let label = match &v.label {
                PlaceLabel::Finite(f) => poly(k, f),
                PlaceLabel::Infinity => json!("inf"),
            };
            json!({ "label": label, "degree": v.degree, "mu": v.mu })
        })
        .collect();
    let eigen: Vec<Value> = prof
        .eigen
        .iter()
        .map(|e| {
            let j = e.index.j;
            json!({
                "j": j,
                "nu": e.index.nu,
                "mu": e.index.mu_frob,
                "b": e.b,
                "residues": prof.residue_strings(j),
                "general_position": e.general_position,
                "expected_dim": e.expected_dim,
                "divisor_inequality": prof.check_divisor_inequality(j),
                "fuchs": prof.check_fuchs(j),
                "residue_range": prof.check_residue_range(j),
            })
        })
        .collect();
    json!({
        "p": prof.p,
        "q": prof.q,
        "t": prof.t,
        "places": places,
        "eigen": eigen,
        "punctures": prof.puncture_count(),
        "components": prof.component_count(),
    })
}

pub fn count(r: &CountReport) -> Value {
    json!({
        "n": r.n,
        "total": r.total,
        "histogram": r.histogram,
        "sums": r.sums.iter().map(|c| ints(c)).collect::<Vec<_>>(),
        "integer_sums": r.integer_sums.iter().map(|s| s.as_ref().map(int)).collect::<Vec<_>>(),
    })
}

/// Sparse `{exponent vector: coefficient}` map with keys like `"[2,0]"`.
pub fn mpoly(k: &FieldSpec, f: &MPoly) -> Value {
    let mut m = Map::new();
    for (e, c) in &f.terms {
        m.insert(json!(e).to_string(), element(k, c));
    }
    Value::Object(m)
}

pub fn hodge(h: &HodgeTable) -> Value {
    json!({
        "d": h.d,
        "q": h.q,
        "h": ints(&h.h),
        "alternating": int(&h.alternating),
        "product": int(&h.product),
        "holds": h.identity_holds(),
    })
}

pub fn omega(o: &OmegaData) -> Value {
    json!({
        "s": o.s,
        "gamma_powers": o.exponents,
        "wedge": o.wedge.iter().map(|i| format!("z_{i}")).collect::<Vec<_>>(),
        "label": o.label,
    })
}

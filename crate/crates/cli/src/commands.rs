//! Subcommand pipelines. Each returns a report object with an `ok` flag.

use num_bigint::BigInt;
use serde_json::{json, Value};

use kummer_core::census::{count_cover_with_budget, lefschetz_compare_counts, prime_power};
use kummer_core::crystal;
use kummer_core::dl;
use kummer_core::engine::charpoly::EigenRun;
use kummer_core::engine::zeta::{counts_from_rational, singular_twists, zeta_with_run};
use kummer_core::engine::{modp_euler, CoverSpec};
use kummer_core::Error;

use crate::config::JobConfig;
use crate::report;

/// Why a job produced no report.
#[derive(Debug)]
pub enum Failure {
    /// Bad arguments or unsupported input; exit code 2.
    Usage(String),
    /// The computation itself failed; exit code 1.
    Compute(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::PrecisionExhausted(_)
            | Error::NotRational { .. }
            | Error::NotUnit
            | Error::NotOneUnit
            | Error::NotInvertible
            | Error::NotPower { .. }
            | Error::BadShift { .. } => Failure::Compute(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

type Outcome = Result<(Value, bool), Failure>;

fn cover_of(job: &JobConfig) -> Result<CoverSpec, Failure> {
    job.cover().map_err(Failure::Usage)
}

pub fn dispatch(job: &JobConfig) -> Outcome {
    match job.command.as_str() {
        "zeta" => zeta(job),
        "eigenspaces" => eigenspaces(job),
        "profile" => profile(job),
        "count" => count(job),
        "dl" => dl(job),
        "verify" => verify(job),
        other => Err(Failure::Usage(format!("unknown command {other}"))),
    }
}

fn zeta(job: &JobConfig) -> Outcome {
    let cover = cover_of(job)?;
    let n_max = job.n_max.unwrap_or(2);
    let (z, _) = zeta_with_run(&cover, n_max)?;
    let k = cover.field();
    let eigen: Vec<Value> =
        z.char_polys.iter().map(|(j, cp)| report::eigenspace(k, cp, &z.frobenius[j], z.precision)).collect();
    let singular: Vec<Value> = z.singular.iter().map(|(j, k)| json!({ "j": j, "twist": k })).collect();
    let consistent = counts_from_rational(&z.numerator, &z.denominator, n_max) == z.counts;
    let integral = z.frobenius.values().all(|f| f.is_integral());
    let body = json!({
        "precision_used": z.precision,
        "eigenspaces": eigen,
        "singular": singular,
        "zeta": {
            "counts": report::ints(&z.counts),
            "numerator": report::ints(&z.numerator),
            "denominator": report::ints(&z.denominator),
        },
        "components": z.components,
        "weil": z.weil,
        "integral": integral,
    });
    Ok((body, z.weil && consistent))
}

fn general_indices(cover: &CoverSpec) -> Result<Vec<u64>, Failure> {
    let prof = crystal::profile(cover)?;
    Ok((1..cover.t()).filter(|&j| prof.eigen(j).general_position).collect())
}

fn eigenspaces(job: &JobConfig) -> Outcome {
    let cover = cover_of(job)?;
    let general = general_indices(&cover)?;
    let js = if job.j.is_empty() { general.clone() } else { job.j.clone() };
    for &j in &js {
        if j >= cover.t() {
            return Err(Error::OutOfRange { value: j, bound: cover.t() }.into());
        }
        if !general.contains(&j) {
            return Err(Error::SingularEigenspace { j }.into());
        }
    }
    let mut sorted = js.clone();
    sorted.sort_unstable();
    sorted.dedup();
    let k = cover.field();
    let (eigen, precision, working) = if sorted.is_empty() {
        (Vec::new(), 0, 0)
    } else {
        let run = EigenRun::new(&cover, &sorted)?;
        let mut out = Vec::new();
        for j in &sorted {
            let mut v = report::eigenspace(k, &run.exact[j], &run.frob_q[j], run.precision);
            let e = modp_euler(&cover, *j)?;
            let obj = v.as_object_mut().expect("object");
            obj.insert("euler".into(), report::euler(&e));
            obj.insert("p_step".into(), report::matrix(k, &run.steps[j]));
            out.push(v);
        }
        (out, run.precision, run.working)
    };
    let body = json!({ "precision_used": precision, "working": working, "eigenspaces": eigen });
    Ok((body, true))
}

fn profile(job: &JobConfig) -> Outcome {
    let cover = cover_of(job)?;
    let prof = crystal::profile(&cover)?;
    let ok = (0..prof.t).all(|j| {
        prof.check_divisor_inequality(j)
            && prof.check_fuchs(j)
            && prof.check_residue_range(j)
            && prof.check_general_position(j)
    });
    Ok((json!({ "profile": report::profile(cover.field(), &prof) }), ok))
}

fn count(job: &JobConfig) -> Outcome {
    let cover = cover_of(job)?;
    let budget = job.count_budget.unwrap_or(kummer_core::census::DEFAULT_BUDGET);
    let mut counts = Vec::new();
    for n in 1..=job.n_max.unwrap_or(2) {
        counts.push(report::count(&count_cover_with_budget(&cover, n, budget)?));
    }
    Ok((json!({ "counts": counts }), true))
}

fn dl(job: &JobConfig) -> Outcome {
    let d = job.d.ok_or_else(|| Failure::Usage("missing --d".into()))?;
    let q = job.q.ok_or_else(|| Failure::Usage("missing --q".into()))?;
    let budget = job.term_budget.unwrap_or(dl::DEFAULT_TERM_BUDGET);
    let spec = dl::build_pi_gl_with_budget(d, q, budget)?;
    let hodge = dl::hodge_table(d, q)?;
    let omega: Vec<Value> =
        (0..=d).map(|s| dl::omega_data(d, q, s).map(|o| report::omega(&o))).collect::<Result<_, _>>()?;
    let singular: Vec<u64> = (0..q - 1).map(|i| i * spec.s_star).collect();
    let mut ok = hodge.identity_holds() && spec.closed_form != Some(false);
    let mut body = json!({
        "d": d,
        "q": q,
        "t": spec.t,
        "s_star": spec.s_star,
        "factors": spec.factors,
        "pi": report::mpoly(&spec.field, &spec.pi),
        "pi_degree": spec.pi.total_degree(),
        "closed_form": spec.closed_form,
        "hodge": report::hodge(&hodge),
        "dimension": report::int(&hodge.product),
        "singular_j": singular,
        "omega": omega,
    });
    if job.verify {
        let checks = dl_checks(d, q, job.n_max.unwrap_or(2), budget)?;
        ok &= checks.iter().all(|c| c["ok"] == json!(true));
        body["checks"] = Value::Array(checks);
    }
    Ok((body, ok))
}

fn check(name: &str, ok: bool, detail: Value) -> Value {
    json!({ "name": name, "ok": ok, "detail": detail })
}

fn dl_checks(d: usize, q: u64, n_max: usize, budget: usize) -> Result<Vec<Value>, Failure> {
    let mut out = Vec::new();
    let delta = dl::delta_identity_check_with_budget(d, q, budget)?;
    out.push(check("delta_identity", delta, json!({ "d": d, "q": q })));
    let gens = dl::gl_generators(d, q)?;
    let mut detail = Vec::new();
    let mut all = true;
    for g in &gens {
        let r = dl::action_check_with_budget(d, q, g, budget)?;
        all &= r.verified();
        detail.push(json!({ "pi_invariant": r.pi_invariant, "relation_holds": r.relation_holds }));
    }
    out.push(check("action_generators", all, Value::Array(detail)));
    if d <= 2 {
        let (p, a) = prime_power(q)?;
        let k = kummer_core::arith::FieldSpec::new(p, a)?;
        // the upper unipotent matrix with ones above the diagonal
        let u: dl::FqMatrix =
            (0..=d).map(|i| (0..=d).map(|j| if j == i || j == i + 1 { k.one() } else { k.zero() }).collect()).collect();
        let mut fine = true;
        for s in 0..=d {
            let c = dl::omega_character(d, q, s, &u)?;
            fine &= c.verified && c.character == k.one();
        }
        out.push(check("omega_unipotent", fine, json!({ "d": d })));
    }
    if d == 1 {
        let b = dl::dl_curve_bridge(q, n_max)?;
        let detail = json!({
            "dims": b.dims.values().collect::<Vec<_>>(),
            "engine_counts": report::ints(&b.engine_counts),
            "dl_counts": b.dl_counts,
            "components": b.components,
            "singular_agrees": b.singular_agrees,
        });
        out.push(check("curve_bridge", b.all_ok(), detail));
    }
    Ok(out)
}

/// Every consistency check that applies to one cover.
fn cover_checks(cover: &CoverSpec, n_max: usize, budget: u64) -> Result<Vec<Value>, Failure> {
    let mut out = Vec::new();
    let t = cover.t();
    let prof = crystal::profile(cover)?;
    let crystal_ok = (0..t).all(|j| {
        prof.check_divisor_inequality(j)
            && prof.check_fuchs(j)
            && prof.check_residue_range(j)
            && prof.check_general_position(j)
    });
    out.push(check("crystal_identities", crystal_ok, json!({ "t": t })));

    let (z, run) = zeta_with_run(cover, n_max)?;
    out.push(check("weil_bounds", z.weil, json!({})));
    let back = counts_from_rational(&z.numerator, &z.denominator, n_max);
    out.push(check("zeta_counts", back == z.counts, json!({ "counts": report::ints(&z.counts) })));
    let integral = z.frobenius.values().all(|f| f.is_integral());
    out.push(json!({ "name": "frobenius_integral", "ok": true, "detail": { "integral": integral } }));

    let reports = (1..=n_max).map(|n| count_cover_with_budget(cover, n, budget)).collect::<Result<Vec<_>, _>>()?;
    let totals: Vec<BigInt> = reports.iter().map(|r| BigInt::from(r.total)).collect();
    out.push(check("census_counts", totals == z.counts, json!({ "census": report::ints(&totals) })));
    if let Some(run) = &run {
        let lef = lefschetz_compare_counts(cover, run, &reports)?;
        let bad: Vec<Value> = lef.mismatches().map(|c| json!({ "j": c.j, "n": c.n })).collect();
        out.push(check("lefschetz", lef.all_match(), json!({ "traces": lef.checks.len(), "mismatches": bad })));
    }

    let mut chis = Vec::new();
    let mut dims_ok = true;
    for j in 0..t {
        let e = modp_euler(cover, j)?;
        if let Some(cp) = z.char_polys.get(&j) {
            dims_ok &= e.h0 == 0 && e.h1 == cp.dim;
        }
        chis.push(e.chi);
    }
    let constant = chis.windows(2).all(|w| w[0] == w[1]);
    out.push(check("euler_characteristic", constant && dims_ok, json!({ "chi": chis.first() })));
    let twists = singular_twists(cover)?;
    out.push(check("components", twists.len() as u64 == z.components, json!({ "components": z.components })));
    Ok(out)
}

/// Covers checked by `verify` without arguments: `(p, a, t, Pi)`.
const SUITE: &[(u64, usize, u64, &[i64])] = &[
    (7, 1, 2, &[0, -1, 0, 1]),
    (2, 2, 3, &[0, 1, 1]),
    (3, 2, 8, &[0, 0, -1, 0, 2, 0, -1]),
    (5, 1, 4, &[1, 0, 0, 1]),
    (3, 2, 4, &[1, 0, 0, 1, 0, 1]),
];

fn verify(job: &JobConfig) -> Outcome {
    let n_max = job.n_max.unwrap_or(2);
    let budget = job.count_budget.unwrap_or(kummer_core::census::DEFAULT_BUDGET);
    let mut groups = Vec::new();
    if job.has_cover() {
        let cover = cover_of(job)?;
        groups.push(json!({ "cover": job.canonical().map_err(Failure::Usage)?["pi"], "checks": cover_checks(&cover, n_max, budget)? }));
    } else {
        for &(p, a, t, pi) in SUITE {
            let k = kummer_core::arith::FieldSpec::new(p, a)?;
            let cover = CoverSpec::from_ints(&k, t, pi)?;
            groups.push(json!({ "p": p, "a": a, "t": t, "pi": pi, "checks": cover_checks(&cover, n_max, budget)? }));
        }
        for (d, q) in [(1, 2), (1, 3), (2, 2)] {
            groups.push(json!({ "d": d, "q": q, "checks": dl_checks(d, q, n_max, dl::DEFAULT_TERM_BUDGET)? }));
        }
        let mut hodge_ok = true;
        for d in 1..=8 {
            for q in 2..=32 {
                hodge_ok &= dl::hodge_table(d, q)?.identity_holds();
            }
        }
        groups
            .push(json!({ "checks": [check("hodge_alternating_sum", hodge_ok, json!({ "d_max": 8, "q_max": 32 }))] }));
    }
    let ok = groups.iter().all(|g| g["checks"].as_array().is_some_and(|cs| cs.iter().all(|c| c["ok"] == json!(true))));
    Ok((json!({ "groups": groups }), ok))
}

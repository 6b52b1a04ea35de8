//! One function per subcommand; each returns the verdicts it produced.

use std::collections::BTreeMap;

use anyhow::{bail, Result};
use flagcoh::character::{self, LaurentPolynomial};
use flagcoh::combinatorics::WeightSequence;
use flagcoh::complex::{
    self, check_involution, check_stable_periodicity_hook, poincare_formula_all_ones,
    ses_dimension_check, stable_hook_cohomology, ChainComplex, Coefficients, PoincarePolynomial,
};
use flagcoh::determinantal::{self, SliceParams};
use flagcoh::incidence::{self, IncidenceOptions};
use flagcoh::{Exec, Prime};
use serde_json::{json, Value};

use crate::args::{CharCmd, Command, ComplexCmd, DetCmd, IncidenceCmd, IncidenceFormula, StableCmd};
use crate::verdict::{Status, TableRow, Verdict};

fn params(v: Value) -> BTreeMap<String, Value> {
    match v {
        Value::Object(m) => m.into_iter().collect(),
        _ => BTreeMap::new(),
    }
}

fn prime(q: u64) -> Result<Prime> {
    Ok(Prime::new(q)?)
}

impl Command {
    /// Space-separated subcommand path, as typed.
    pub fn name(&self) -> &'static str {
        match self {
            Command::Complex(ComplexCmd::Homology { .. }) => "complex homology",
            Command::Complex(ComplexCmd::Theorem { .. }) => "complex theorem",
            Command::Complex(ComplexCmd::Involution { .. }) => "complex involution",
            Command::Complex(ComplexCmd::SesCheck { .. }) => "complex ses-check",
            Command::Stable(StableCmd::Hook { .. }) => "stable hook",
            Command::Stable(StableCmd::Periodicity { .. }) => "stable periodicity",
            Command::Incidence(IncidenceCmd::Chars { .. }) => "incidence chars",
            Command::Det(DetCmd::Filtration { .. }) => "det filtration",
            Command::Det(DetCmd::LeadTerms { .. }) => "det lead-terms",
            Command::Char(CharCmd::Nim { .. }) => "char nim",
            Command::Char(CharCmd::Schur { .. }) => "char schur",
            Command::Sweep { .. } => "sweep",
        }
    }

    /// The parameters exactly as given on the command line.
    pub fn parameters(&self) -> BTreeMap<String, Value> {
        params(match self {
            Command::Complex(ComplexCmd::Homology { weights, prime }) => json!({"weights": weights, "prime": prime}),
            Command::Complex(ComplexCmd::Theorem { d, primes }) => json!({"d": d, "primes": primes}),
            Command::Complex(ComplexCmd::Involution { w0, d, primes }) => json!({"w0": w0, "d": d, "primes": primes}),
            Command::Complex(ComplexCmd::SesCheck { weights, split, prime }) => {
                json!({"weights": weights, "split": split, "prime": prime})
            }
            Command::Stable(StableCmd::Hook { w0, d, prime }) => json!({"w0": w0, "d": d, "prime": prime}),
            Command::Stable(StableCmd::Periodicity { w0, d, prime, r }) => {
                json!({"w0": w0, "d": d, "prime": prime, "r": r})
            }
            Command::Incidence(IncidenceCmd::Chars { n, d, e, prime, compare, dims_only, no_symmetry }) => json!({
                "n": n, "d": d, "e": e, "prime": prime,
                "compare": compare.map(IncidenceFormula::name),
                "dims_only": dims_only, "no_symmetry": no_symmetry,
            }),
            Command::Det(DetCmd::Filtration { n, a, b, i, prime, classical, compare }) => json!({
                "n": n, "a": a, "b": b, "i": i, "prime": prime, "classical": classical, "compare": compare,
            }),
            Command::Det(DetCmd::LeadTerms { n, a, b, prime, classical }) => {
                json!({"n": n, "a": a, "b": b, "prime": prime, "classical": classical})
            }
            Command::Char(CharCmd::Nim { m, n }) => json!({"m": m, "n": n}),
            Command::Char(CharCmd::Schur { a, b, q, n }) => json!({"a": a, "b": b, "q": q, "n": n}),
            Command::Sweep { config } => json!({"config": config.display().to_string()}),
        })
    }

    pub fn execute(&self, exec: Exec) -> Result<Vec<Verdict>> {
        match self {
            Command::Complex(ComplexCmd::Homology { weights, prime: q }) => {
                Ok(vec![homology(WeightSequence::parse(weights)?, prime(*q)?, exec)?])
            }
            Command::Complex(ComplexCmd::Theorem { d, primes }) => {
                primes.iter().map(|&q| theorem(*d, prime(q)?, exec)).collect()
            }
            Command::Complex(ComplexCmd::Involution { w0, d, primes }) => {
                primes.iter().map(|&q| involution(*w0, *d, prime(q)?, exec)).collect()
            }
            Command::Complex(ComplexCmd::SesCheck { weights, split, prime: q }) => {
                Ok(vec![ses(WeightSequence::parse(weights)?, *split, prime(*q)?, exec)?])
            }
            Command::Stable(StableCmd::Hook { w0, d, prime: q }) => Ok(vec![hook(*w0, *d, prime(*q)?, exec)?]),
            Command::Stable(StableCmd::Periodicity { w0, d, prime: q, r }) => {
                Ok(vec![periodicity(*w0, *d, prime(*q)?, *r, exec)?])
            }
            Command::Incidence(IncidenceCmd::Chars { n, d, e, prime: q, compare, dims_only, no_symmetry }) => {
                let opts = IncidenceOptions {
                    exec,
                    symmetry_reduction: !no_symmetry,
                };
                incidence_chars(*n, *d, *e, prime(*q)?, *compare, *dims_only, opts)
            }
            Command::Det(DetCmd::Filtration { n, a, b, i, prime: q, classical, compare }) => {
                let p = SliceParams {
                    n: *n,
                    a: *a,
                    b: *b,
                    i: *i,
                    truncated: !classical,
                    p: prime(*q)?,
                };
                Ok(vec![filtration(p, *compare, exec)?])
            }
            Command::Det(DetCmd::LeadTerms { n, a, b, prime: q, classical }) => {
                Ok(vec![lead_terms(*n, *a, *b, prime(*q)?, *classical, exec)?])
            }
            Command::Char(CharCmd::Nim { m, n }) => {
                let f = character::nim_poly(*m, *n);
                Ok(vec![polynomial("char.nim", json!({"m": m, "n": n}), f)])
            }
            Command::Char(CharCmd::Schur { a, b, q, n }) => {
                let f = match q {
                    Some(q) if *q == 0 => bail!("q must be positive"),
                    Some(q) => character::schur2_trunc(*a, *b, *q, *n),
                    None => character::schur2(*a, *b, *n),
                };
                Ok(vec![polynomial("char.schur", json!({"a": a, "b": b, "q": q, "n": n}), f)])
            }
            Command::Sweep { .. } => bail!("sweep cannot be nested"),
        }
    }
}

fn degree_table(series: &str, h: &PoincarePolynomial, len: usize) -> Vec<TableRow> {
    (0..=len)
        .map(|i| TableRow {
            series: series.to_string(),
            index: i.to_string(),
            dimension: h.coeff(i).to_string(),
        })
        .collect()
}

fn multidegree_table(series: &str, f: &LaurentPolynomial) -> Vec<TableRow> {
    f.terms()
        .map(|(e, c)| TableRow {
            series: series.to_string(),
            index: e.iter().map(i32::to_string).collect::<Vec<_>>().join(" "),
            dimension: c.to_string(),
        })
        .collect()
}

fn degree_witness(a: &PoincarePolynomial, b: &PoincarePolynomial) -> Option<Value> {
    a.first_difference(b)
        .map(|(i, x, y)| json!({"degree": i, "computed": x, "expected": y}))
}

fn homology(w: WeightSequence, p: Prime, exec: Exec) -> Result<Verdict> {
    let d = w.len_edges();
    let c = ChainComplex::build(&w, Coefficients::Field(p))?;
    let ranks = c.ranks(exec)?;
    let h = c.homology_dims(exec)?;
    let closed = c.is_complex();
    let all_ones = w.weights().iter().all(|&x| x == 1);
    let formula = all_ones.then(|| poincare_formula_all_ones(d, p));
    let mut v = Verdict::new(
        "complex.homology",
        params(json!({"weights": w.to_string(), "prime": p.as_u64()})),
    );
    let witness = match &formula {
        Some(f) => degree_witness(&h, f),
        None => None,
    };
    let agree = closed && witness.is_none();
    v = v.compared(agree, witness.or_else(|| (!closed).then(|| json!("boundary map squares to a nonzero map"))));
    v.summary = format!("H = {h}");
    if let Some(f) = &formula {
        v.summary.push_str(&format!("\nformula: {f}"));
    }
    v.payload = json!({
        "poincare": h.coeffs(),
        "chain_dims": (0..=d).map(|k| c.dim(k)).collect::<Vec<_>>(),
        "ranks": ranks,
        "boundary_squared_zero": closed,
        "formula": formula.as_ref().map(|f| f.coeffs().to_vec()),
    });
    v.table = degree_table("h", &h, d);
    Ok(v)
}

fn theorem(d: usize, p: Prime, exec: Exec) -> Result<Verdict> {
    let brute = complex::homology(&WeightSequence::all_ones(d), p, exec)?;
    let formula = poincare_formula_all_ones(d, p);
    let mut v = Verdict::new("complex.theorem", params(json!({"d": d, "prime": p.as_u64()})))
        .compared(brute == formula, degree_witness(&brute, &formula));
    v.summary = format!("computed {brute}; formula {formula}");
    v.payload = json!({"computed": brute.coeffs(), "formula": formula.coeffs()});
    v.table = degree_table("h", &brute, d);
    Ok(v)
}

fn involution(w0: i64, d: usize, p: Prime, exec: Exec) -> Result<Verdict> {
    let r = check_involution(w0, d, p, exec)?;
    let mut witness = r
        .ranks
        .iter()
        .zip(&r.partner_ranks)
        .position(|(a, b)| a != b)
        .map(|k| json!({"differential": k + 1, "rank": r.ranks[k], "partner_rank": r.partner_ranks[k]}));
    if witness.is_none() {
        if let Some((_, shifted, ranks)) = &r.lucas_partner {
            witness = r.ranks.iter().zip(ranks).position(|(a, b)| a != b).map(|k| {
                json!({"differential": k + 1, "rank": r.ranks[k], "shifted_w0": shifted, "shifted_rank": ranks[k]})
            });
        }
    }
    let mut v = Verdict::new("complex.involution", params(json!({"w0": w0, "d": d, "prime": p.as_u64()})))
        .compared(r.agree, witness);
    let smith = match &r.smith {
        Some(s) if s.agree => "Smith invariants agree (necessary condition)",
        Some(_) => "Smith invariants differ (necessary condition fails over the integers)",
        None => "Smith comparison skipped (size)",
    };
    v.summary = format!("ranks {:?}; partner w0 = {} ranks {:?}; {smith}", r.ranks, r.partner_w0, r.partner_ranks);
    if let Some((rr, shifted, ranks)) = &r.lucas_partner {
        v.summary.push_str(&format!("\nr = {rr}: C({shifted}, 1^{d}) ranks {ranks:?}"));
    }
    v.payload = serde_json::to_value(&r)?;
    Ok(v)
}

fn ses(w: WeightSequence, split: usize, p: Prime, exec: Exec) -> Result<Verdict> {
    let r = ses_dimension_check(&w, split, p, exec)?;
    let witness = json!({
        "dims_ok": r.dims_ok,
        "euler_ok": r.euler_ok,
        "subadditive": r.subadditive,
        "first_failing_degree": (0..=w.len_edges()).find(|&k| {
            r.chain_dims[k] != r.tensor_dims[k] + r.quotient_dims[k]
                || r.homology.coeff(k) > r.sub_homology.coeff(k) + r.quotient_homology.coeff(k)
        }),
    });
    let mut v = Verdict::new(
        "complex.ses-check",
        params(json!({"weights": w.to_string(), "split": split, "prime": p.as_u64()})),
    )
    .compared(r.holds(), Some(witness));
    v.summary = format!(
        "H(w) = {}; sub = {}; quotient = {}",
        r.homology, r.sub_homology, r.quotient_homology
    );
    v.table = degree_table("h", &r.homology, w.len_edges());
    v.payload = serde_json::to_value(&r)?;
    Ok(v)
}

fn hook(w0: i64, d: usize, p: Prime, exec: Exec) -> Result<Verdict> {
    let h = stable_hook_cohomology(w0, d, p, exec)?;
    let mut v = Verdict::new("stable.hook", params(json!({"w0": w0, "d": d, "prime": p.as_u64()})));
    v.summary = if h.is_empty() {
        "all stable cohomology vanishes".to_string()
    } else {
        h.iter().map(|(j, c)| format!("H^{j} = {c}")).collect::<Vec<_>>().join(", ")
    };
    v.payload = json!({"cohomology": h.iter().map(|(j, c)| json!({"j": j, "dim": c})).collect::<Vec<_>>()});
    v.table = h
        .iter()
        .map(|(j, c)| TableRow {
            series: "H_st".into(),
            index: j.to_string(),
            dimension: c.to_string(),
        })
        .collect();
    Ok(v)
}

fn periodicity(w0: i64, d: usize, p: Prime, r: u32, exec: Exec) -> Result<Verdict> {
    let rep = check_stable_periodicity_hook(w0, d, p, r, exec)?;
    let mut v = Verdict::new(
        "stable.periodicity",
        params(json!({"w0": w0, "d": d, "prime": p.as_u64(), "r": r})),
    )
    .compared(rep.agree, degree_witness(&rep.before, &rep.after));
    v.summary = format!("C({w0}, 1^{d}): {}; shifted by {}: {}", rep.before, rep.q, rep.after);
    v.payload = serde_json::to_value(&rep)?;
    Ok(v)
}

fn incidence_chars(
    n: usize,
    d: i64,
    e: i64,
    p: Prime,
    compare: Option<IncidenceFormula>,
    dims_only: bool,
    opts: IncidenceOptions,
) -> Result<Vec<Verdict>> {
    let base = json!({"n": n, "d": d, "e": e, "prime": p.as_u64()});
    let pair = incidence::h_characters(n, d, e, p, opts)?;
    let blockwise = pair.blockwise_euler_holds();
    let global = pair.global_euler_holds();
    let symmetric = pair.h0.is_symmetric() && pair.h1.is_symmetric();
    let mut v = Verdict::new("incidence.characters", params(base.clone())).compared(
        blockwise && global && symmetric,
        Some(json!({
            "blockwise_euler": blockwise,
            "global_euler": global,
            "symmetric": symmetric,
            "first_bad_block": pair.blocks.iter().find(|b| !b.euler_holds()).map(|b| &b.multidegree),
        })),
    );
    v.summary = format!(
        "h0 = {}\nh1 = {}\ndim h0 = {}, dim h1 = {}",
        pair.h0,
        pair.h1,
        pair.h0.dim_eval(),
        pair.h1.dim_eval()
    );
    v.payload = json!({
        "h0": pair.h0,
        "h1": pair.h1,
        "dim_h0": pair.h0.dim_eval().to_string(),
        "dim_h1": pair.h1.dim_eval().to_string(),
        "blocks_scanned": pair.blocks.len(),
        "nonzero_blocks": pair.blocks.iter().filter(|b| b.kernel + b.cokernel > 0).collect::<Vec<_>>(),
    });
    v.table = multidegree_table("h0", &pair.h0);
    v.table.extend(multidegree_table("h1", &pair.h1));
    let mut out = vec![v];

    if let Some(formula) = compare {
        let expected = match formula {
            IncidenceFormula::H1Theorem => incidence::h1_theorem_char(n, d, e, p)?,
            IncidenceFormula::SmallWeights => incidence::small_weights_conjecture_char(n, d, e, p)?,
            IncidenceFormula::Char2 => {
                if p.get() != 2 {
                    bail!("the char2 formula needs --prime 2");
                }
                incidence::char2_conjecture_char(n, d, e)?
            }
        };
        let mut cp = base;
        cp["dims_only"] = json!(dims_only);
        let mut c = Verdict::new(&format!("incidence.{}", formula.name()), params(cp));
        let (dc, de) = (pair.h1.dim_eval(), expected.dim_eval());
        c = if dims_only {
            c.compared(dc == de, Some(json!({"dim_computed": dc.to_string(), "dim_expected": de.to_string()})))
        } else {
            let w = pair.h1.first_difference(&expected);
            c.compared(w.is_none(), w.map(|w| serde_json::to_value(w).unwrap_or(Value::Null)))
        };
        c.summary = format!("expected h1 = {expected}");
        c.payload = json!({"expected": expected, "dim_expected": de.to_string(), "dim_computed": dc.to_string()});
        out.push(c);
    }
    Ok(out)
}

fn filtration(p: SliceParams, compare: bool, exec: Exec) -> Result<Verdict> {
    let computed = determinantal::filtration_character(p, exec)?;
    let within = !p.truncated || p.a as i64 - p.b as i64 >= p.p.as_u64() as i64 - 1;
    let mut v = Verdict::new(
        "det.filtration",
        params(json!({
            "n": p.n, "a": p.a, "b": p.b, "i": p.i, "prime": p.p.as_u64(), "classical": !p.truncated,
        })),
    );
    v.summary = format!("character = {computed}");
    v.table = multidegree_table("filtration", &computed);
    let mut payload = json!({"character": computed, "dim": computed.dim_eval().to_string()});
    if compare {
        let (big, small) = ((p.a + p.b - p.i) as i64, p.i as i64);
        let expected = if p.i > p.a.min(p.b) {
            LaurentPolynomial::zero(p.n)
        } else if p.truncated {
            character::schur2_trunc(big, small, p.p.get(), p.n)
        } else {
            character::schur2(big, small, p.n)
        };
        let w = computed.first_difference(&expected);
        let matches = w.is_none();
        let witness = w.map(|w| serde_json::to_value(w).unwrap_or(Value::Null));
        if within {
            v = v.compared(matches, witness);
        } else {
            v.status = Status::OutsideHypothesis;
            v.witness = witness;
        }
        v.summary.push_str(&format!("\nexpected  = {expected}"));
        payload["expected"] = serde_json::to_value(&expected)?;
        payload["matches"] = json!(matches);
        payload["within_hypothesis"] = json!(within);
    }
    v.payload = payload;
    Ok(v)
}

fn lead_terms(n: usize, a: u32, b: u32, p: Prime, classical: bool, exec: Exec) -> Result<Verdict> {
    let r = if classical {
        determinantal::check_classical_lead_terms(n, a, b, p, exec)?
    } else {
        determinantal::check_lead_terms(n, a, b, p, exec)?
    };
    let ok = if classical { r.equal() } else { r.contained() };
    let witness = r
        .missing
        .first()
        .map(|m| json!({"missing": m.to_string()}))
        .or_else(|| r.extra.first().map(|m| json!({"extra": m.to_string()})));
    let mut v = Verdict::new(
        "det.lead-terms",
        params(json!({"n": n, "a": a, "b": b, "prime": p.as_u64(), "classical": classical})),
    );
    if r.within_hypothesis {
        v = v.compared(ok, witness);
    } else {
        v.status = Status::OutsideHypothesis;
        v.witness = if ok { None } else { witness };
    }
    v.summary = format!(
        "{} tableaux, {} leading monomials, {} missing, {} extra",
        r.tableaux,
        r.pivots,
        r.missing.len(),
        r.extra.len()
    );
    v.payload = json!({
        "tableaux": r.tableaux,
        "pivots": r.pivots,
        "missing": r.missing.iter().map(ToString::to_string).collect::<Vec<_>>(),
        "extra": r.extra.iter().map(ToString::to_string).collect::<Vec<_>>(),
        "within_hypothesis": r.within_hypothesis,
        "contained": r.contained(),
    });
    Ok(v)
}

fn polynomial(subject: &str, p: Value, f: LaurentPolynomial) -> Verdict {
    let symmetric = f.is_symmetric();
    let mut v = Verdict::new(subject, params(p)).compared(symmetric, Some(json!("not symmetric")));
    v.summary = f.to_string();
    v.table = multidegree_table("coefficient", &f);
    v.payload = json!({"polynomial": f, "dim": f.dim_eval().to_string(), "symmetric": symmetric});
    v
}

//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit on failure.

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;
use std::time::{Duration, Instant};

use flagcoh::character::{h, nim_poly, schur2, schur2_trunc, LaurentPolynomial};
use flagcoh::combinatorics::{enumerate_pssyt, enumerate_ssyt, TwoRowTableau, WeightSequence};
use flagcoh::complex::{
    check_involution, homology, integer_rows, lucas_reduce, poincare_formula_all_ones, stable_hook_cohomology,
    ChainComplex, Coefficients,
};
use flagcoh::determinantal::{self, SliceParams};
use flagcoh::incidence::{self, IncidenceOptions};
use flagcoh::{Exec, Prime, PrimeFieldMatrix};
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<String, String>;

const EXEC: Exec = Exec::Parallel;

fn p(q: u64) -> Prime {
    Prime::new(q).unwrap()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn criterion(id: u32, name: &str, limit: Duration, f: impl FnOnce() -> Check) -> bool {
    let start = Instant::now();
    let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
        let msg = e
            .downcast_ref::<String>()
            .cloned()
            .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
            .unwrap_or_default();
        Err(format!("panicked: {msg}"))
    });
    let t = start.elapsed();
    let (ok, detail) = match outcome {
        Ok(_) if t > limit => (false, format!("took {t:.2?}, limit {limit:?}")),
        Ok(d) => (true, d),
        Err(d) => (false, d),
    };
    println!(
        "{} {:>2}. {name}: {detail} [{:.2?}]",
        if ok { "PASS" } else { "FAIL" },
        id,
        t
    );
    ok
}

fn reversed(m: &[Vec<i64>]) -> Vec<Vec<i64>> {
    m.iter().rev().map(|r| r.iter().rev().copied().collect()).collect()
}

fn c1111_matrices() -> Check {
    let c = ChainComplex::build(&WeightSequence::all_ones(3), Coefficients::Integers).map_err(|e| e.to_string())?;
    // displayed left to right: C_3 -> C_2 -> C_1 -> C_0, opposite basis order
    let displayed = [
        (3, vec![vec![4], vec![6], vec![4]]),
        (2, vec![vec![-3, 2, 0], vec![-3, 0, 3], vec![0, -2, 3]]),
        (1, vec![vec![2, -2, 2]]),
    ];
    for (k, want) in displayed {
        let got = integer_rows(c.differential(k).unwrap().as_integer().unwrap());
        ensure(got == reversed(&want), || format!("d_{k} = {got:?}"))?;
    }
    Ok("three differentials match".into())
}

fn hom_c1111() -> Check {
    let w = WeightSequence::all_ones(3);
    let want: [(u64, &[usize]); 5] = [(2, &[1, 1, 1, 1]), (3, &[0, 1, 1]), (5, &[]), (7, &[]), (11, &[])];
    for (q, coeffs) in want {
        let got = homology(&w, p(q), EXEC).map_err(|e| e.to_string())?;
        ensure(got.coeffs() == coeffs, || format!("p={q}: {got}"))?;
    }
    Ok("1+t+t^2+t^3, t+t^2, 0, 0, 0".into())
}

fn theorem_all_ones() -> Check {
    let mut count = 0;
    for d in 0..=12 {
        for q in [2, 3, 5, 7] {
            let brute = homology(&WeightSequence::all_ones(d), p(q), EXEC).map_err(|e| e.to_string())?;
            let formula = poincare_formula_all_ones(d, p(q));
            ensure(brute == formula, || format!("d={d} p={q}: {brute} vs {formula}"))?;
            count += 1;
        }
    }
    Ok(format!("{count} cases"))
}

fn lucas_samples() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(0x1ca5);
    for s in 0..50 {
        let q = [2u64, 3, 5][rng.gen_range(0..3)];
        let d = rng.gen_range(1..=5);
        let mut ws: Vec<i64> = vec![rng.gen_range(-12..=24)];
        ws.extend((0..d).map(|_| rng.gen_range(0..=3)));
        let tail: i64 = ws[1..].iter().sum();
        let mut r = 0u32;
        while (q as i64).pow(r) <= tail {
            r += 1;
        }
        r += rng.gen_range(0..=1);
        let w = WeightSequence::new(ws.clone()).map_err(|e| e.to_string())?;
        let shifted = w.with_w0(w.w0() + (q as i64).pow(r));
        let a = homology(&w, p(q), EXEC).map_err(|e| e.to_string())?;
        let b = homology(&shifted, p(q), EXEC).map_err(|e| e.to_string())?;
        ensure(a == b, || format!("sample {s}: w={w} p={q} r={r}: {a} vs {b}"))?;
        if w.w0() >= 0 {
            let red = lucas_reduce(&shifted, p(q)).map_err(|e| e.to_string())?;
            let c = homology(&red, p(q), EXEC).map_err(|e| e.to_string())?;
            ensure(a == c, || format!("sample {s}: reduced {red}: {c} vs {a}"))?;
        }
    }
    Ok("50 samples, shift and full reduction".into())
}

fn involution_grid() -> Check {
    let mut count = 0;
    for q in [2, 3] {
        for d in 0..=6 {
            for w0 in 0..=4 {
                let rep = check_involution(w0, d, p(q), EXEC).map_err(|e| e.to_string())?;
                let (_, shifted, ranks) = rep
                    .lucas_partner
                    .clone()
                    .ok_or_else(|| format!("w0={w0} d={d}: no partner"))?;
                ensure(ranks == rep.ranks, || {
                    format!("w0={w0} d={d} p={q}: {:?} vs C({shifted}) {ranks:?}", rep.ranks)
                })?;
                count += 1;
            }
        }
    }
    Ok(format!("{count} rank tables agree"))
}

fn stable_hooks() -> Check {
    let two = stable_hook_cohomology(1, 3, p(2), EXEC).map_err(|e| e.to_string())?;
    ensure(two == vec![(1, 1), (2, 1), (3, 1), (4, 1)], || format!("p=2: {two:?}"))?;
    let three = stable_hook_cohomology(1, 3, p(3), EXEC).map_err(|e| e.to_string())?;
    ensure(three == vec![(2, 1), (3, 1)], || format!("p=3: {three:?}"))?;
    for q in [2, 3, 5] {
        for w0 in 1..=6 {
            let h = stable_hook_cohomology(w0, 0, p(q), EXEC).map_err(|e| e.to_string())?;
            ensure(h == vec![(w0, 1)], || format!("w0={w0} p={q}: {h:?}"))?;
        }
    }
    Ok("(-4,4) at p=2,3 and d=0 classes".into())
}

fn incidence_example() -> Check {
    let opts = IncidenceOptions::default();
    let two = incidence::h_characters(3, 2, 1, p(2), opts).map_err(|e| e.to_string())?;
    let cube = LaurentPolynomial::monomial(vec![1, 1, 1], 1);
    ensure(two.h0 == cube, || format!("h0 = {}", two.h0))?;
    ensure(two.h1 == cube, || format!("h1 = {}", two.h1))?;
    let m = [2u32, 2, 2];
    let basis = incidence::block_basis(3, 2, 1, &m).map_err(|e| e.to_string())?;
    let mut a: Vec<Vec<u32>> = basis.iter().map(|x| x.a.clone()).collect();
    a.sort();
    ensure(a == vec![vec![0, 1, 1], vec![1, 0, 1], vec![1, 1, 0]], || format!("basis {a:?}"))?;
    let ones = vec![vec![1i64]; basis.len()];
    for (q, zero) in [(2, true), (3, false)] {
        let w = incidence::omega_block(3, 2, 1, &m, p(q)).map_err(|e| e.to_string())?;
        let image = w.matmul(&PrimeFieldMatrix::from_rows(p(q), &ones).unwrap()).unwrap();
        ensure(image.is_zero() == zero, || format!("f*omega at p={q}"))?;
        if zero {
            ensure(w.kernel_dimension() == 1, || format!("kernel {}", w.kernel_dimension()))?;
        }
    }
    let three = incidence::h_characters(3, 2, 1, p(3), opts).map_err(|e| e.to_string())?;
    ensure(three.h0.is_zero() && three.h1.is_zero(), || format!("p=3: {} / {}", three.h0, three.h1))?;
    Ok("h0 = t1*t2*t3, kernel spanned by f, p=3 vanishes".into())
}

fn h1_theorem() -> Check {
    let mut count = 0;
    for q in [2u64, 3] {
        for d in q as i64..2 * q as i64 {
            for e in d - 1..=d + 2 {
                for n in [3, 4] {
                    let pair = incidence::h_characters(n, d, e, p(q), IncidenceOptions::default())
                        .map_err(|e| e.to_string())?;
                    let want = incidence::h1_theorem_char(n, d, e, p(q)).map_err(|e| e.to_string())?;
                    ensure(pair.h1 == want, || {
                        format!("n={n} d={d} e={e} p={q}: {:?}", pair.h1.first_difference(&want))
                    })?;
                    count += 1;
                }
            }
        }
    }
    Ok(format!("{count} cases"))
}

fn small_weights() -> Check {
    let (mut full, mut dims) = (0, 0);
    for q in [2u64, 3, 5] {
        for d in 0..=6i64 {
            if d < q as i64 || d >= (q * q) as i64 {
                continue;
            }
            for e in d - 1..=d + 2 {
                for n in 3..=6 {
                    let pair = incidence::h_characters(n, d, e, p(q), IncidenceOptions::default())
                        .map_err(|e| e.to_string())?;
                    let want = incidence::small_weights_conjecture_char(n, d, e, p(q)).map_err(|e| e.to_string())?;
                    if n <= 4 {
                        ensure(pair.h1 == want, || {
                            format!("n={n} d={d} e={e} p={q}: {:?}", pair.h1.first_difference(&want))
                        })?;
                        full += 1;
                    } else {
                        let (a, b) = (pair.h1.dim_eval(), want.dim_eval());
                        ensure(a == b, || format!("n={n} d={d} e={e} p={q}: dim {a} vs {b}"))?;
                        dims += 1;
                    }
                }
            }
        }
    }
    Ok(format!("{full} full characters, {dims} dimensions"))
}

fn tableau_sum(tabs: &[TwoRowTableau], n: usize) -> LaurentPolynomial {
    let mut out = LaurentPolynomial::zero(n);
    for t in tabs {
        out.add_term(t.content(n).into_iter().map(|x| x as i32).collect(), BigInt::from(1));
    }
    out
}

fn tableau_identities() -> Check {
    for n in 1..=4 {
        for a in 0..=5usize {
            for b in 0..=3usize.min(a) {
                let all = enumerate_ssyt(n, a, b).map_err(|e| e.to_string())?;
                ensure(tableau_sum(&all, n) == schur2(a as i64, b as i64, n), || format!("n={n} ({a},{b})"))?;
                for q in [2u64, 3] {
                    let tabs = enumerate_pssyt(n, a, b, p(q)).map_err(|e| e.to_string())?;
                    ensure(
                        tableau_sum(&tabs, n) == schur2_trunc(a as i64, b as i64, q as u32, n),
                        || format!("n={n} ({a},{b}) p={q}"),
                    )?;
                }
            }
        }
    }
    for n in 1..=5 {
        let got: BTreeSet<_> = enumerate_pssyt(n, 2, 1, p(3)).unwrap().into_iter().collect();
        let mut want: BTreeSet<_> = enumerate_ssyt(n, 2, 1).unwrap().into_iter().collect();
        want.extend((1..=n).map(|i| TwoRowTableau::new(vec![i, i], vec![i], n).unwrap()));
        ensure(got == want, || format!("Tab^(3)_{n}(2,1) differs"))?;
    }
    Ok("both sums and the (2,1) set at p=3".into())
}

fn classical_filtration() -> Check {
    let mut count = 0;
    for q in [2u64, 3] {
        for n in 2..=4 {
            for a in 0..=4u32 {
                for b in 0..=3u32 {
                    let rep = determinantal::check_classical_filtration(n, a, b, p(q), EXEC)
                        .map_err(|e| e.to_string())?;
                    ensure(rep.agree(), || format!("n={n} a={a} b={b} p={q}"))?;
                    let mut total = LaurentPolynomial::zero(n);
                    for row in &rep.rows {
                        total = total.try_add(&row.computed).unwrap();
                    }
                    let pieri = h(a as i64, n).try_mul(&h(b as i64, n)).unwrap();
                    ensure(total == pieri, || format!("Pieri n={n} a={a} b={b}"))?;
                    count += 1;
                }
            }
        }
    }
    let params = SliceParams {
        n: 2,
        a: 1,
        b: 1,
        i: 0,
        truncated: true,
        p: p(2),
    };
    let neg = determinantal::filtration_character(params, EXEC).map_err(|e| e.to_string())?;
    ensure(neg != schur2_trunc(2, 0, 2, 2), || "negative control agreed".into())?;
    Ok(format!("{count} slices, negative control disagrees"))
}

fn run_cli(args: &[&str]) -> (i32, serde_json::Value) {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("v.json");
    let status = Command::new(env!("CARGO_BIN_EXE_flagcoh"))
        .args(["--quiet", "--json", path.to_str().unwrap()])
        .args(args)
        .status()
        .unwrap();
    let j = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    (status.code().unwrap_or(-1), j)
}

fn lead_terms() -> Check {
    for n in 2..=3 {
        for a in 0..=3u32 {
            for b in 0..=2u32.min(a) {
                let rep = determinantal::check_classical_lead_terms(n, a, b, p(2), EXEC).map_err(|e| e.to_string())?;
                ensure(rep.equal(), || format!("n={n} a={a} b={b}: {rep:?}"))?;
            }
        }
    }
    let mut recorded = Vec::new();
    for (n, a, b) in [(2, 2, 1), (3, 2, 1), (3, 3, 1), (3, 3, 2), (4, 3, 2)] {
        let (code, j) = run_cli(&[
            "det",
            "lead-terms",
            "--n",
            &n.to_string(),
            "--a",
            &a.to_string(),
            "--b",
            &b.to_string(),
            "--prime",
            "2",
        ]);
        let v = &j["verdicts"][0];
        let status = v["status"].as_str().unwrap_or("").to_string();
        let expect = match status.as_str() {
            "agree" | "outside-hypothesis" => 0,
            "disagree" => {
                ensure(v["witness"].is_object(), || "disagreement without witness".into())?;
                2
            }
            _ => 1,
        };
        ensure(code == expect, || format!("exit {code} for {status}"))?;
        ensure(status == "agree", || format!("n={n} a={a} b={b} p=2: {status}"))?;
        recorded.push(format!("({n},{a},{b})"));
    }
    Ok(format!("classical equal; p=2 containment agrees at {}", recorded.join(" ")))
}

fn oracle_rank(rows: &[Vec<i64>], q: i64) -> usize {
    let mut m: Vec<Vec<i64>> = rows.iter().map(|r| r.iter().map(|x| x.rem_euclid(q)).collect()).collect();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(pr) = (rank..m.len()).find(|&r| m[r][c] != 0) else {
            continue;
        };
        m.swap(rank, pr);
        let piv = m[rank][c];
        for r in 0..m.len() {
            if r != rank && m[r][c] != 0 {
                let lead = m[r][c];
                for k in 0..cols {
                    m[r][k] = (piv * m[r][k] - lead * m[rank][k]).rem_euclid(q);
                }
            }
        }
        rank += 1;
    }
    rank
}

fn property_suites() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for s in 0..500 {
        let d = rng.gen_range(1..=7);
        let mut ws: Vec<i64> = vec![rng.gen_range(-6..=9)];
        ws.extend((0..d).map(|_| rng.gen_range(0..=9)));
        let w = WeightSequence::new(ws).unwrap();
        let c = if s % 5 == 0 {
            ChainComplex::build(&w, Coefficients::Integers)
        } else {
            ChainComplex::build(&w, Coefficients::Field(p([2, 3, 5, 7][s % 4])))
        }
        .map_err(|e| e.to_string())?;
        ensure(c.is_complex(), || format!("d∘d != 0 for {w}"))?;
    }

    for q in [2u64, 3, 5, 7] {
        for r in 1..=8 {
            for c in 1..=8 {
                let rows: Vec<Vec<i64>> = (0..r).map(|_| (0..c).map(|_| rng.gen_range(-20..=20)).collect()).collect();
                let m = PrimeFieldMatrix::from_rows(p(q), &rows).unwrap();
                ensure(m.rank() == oracle_rank(&rows, q as i64), || format!("{r}x{c} p={q}"))?;
            }
        }
    }

    let mut chars = 0;
    for n in 2..=4 {
        for q in [2u64, 3] {
            for d in 0..=5 {
                for e in -1..=5 {
                    let pair =
                        incidence::h_characters(n, d, e, p(q), IncidenceOptions::default()).map_err(|e| e.to_string())?;
                    ensure(pair.h0.is_symmetric() && pair.h1.is_symmetric(), || {
                        format!("asymmetric n={n} d={d} e={e} p={q}")
                    })?;
                    ensure(pair.blockwise_euler_holds() && pair.global_euler_holds(), || {
                        format!("Euler n={n} d={d} e={e} p={q}")
                    })?;
                    chars += 2;
                }
            }
            for a in 0..=3u32 {
                for b in 0..=a {
                    for i in 0..=b {
                        let params = SliceParams {
                            n,
                            a,
                            b,
                            i,
                            truncated: true,
                            p: p(q),
                        };
                        let f = determinantal::filtration_character(params, EXEC).map_err(|e| e.to_string())?;
                        ensure(f.is_symmetric(), || format!("filtration n={n} ({a},{b}) i={i}"))?;
                        chars += 1;
                    }
                }
            }
        }
        for m in 0..=4 {
            ensure(nim_poly(m, n).is_symmetric(), || format!("nim {m}"))?;
            chars += 1;
        }
    }

    let dir = tempfile::tempdir().unwrap();
    let mut outs = Vec::new();
    for t in ["1", "8"] {
        let path = dir.path().join(format!("{t}.json"));
        let status = Command::new(env!("CARGO_BIN_EXE_flagcoh"))
            .args(["--quiet", "--parallel", t, "--json", path.to_str().unwrap()])
            .args(["incidence", "chars", "--n", "4", "--d", "5", "--e", "5", "--prime", "3", "--compare", "small-weights"])
            .status()
            .unwrap();
        ensure(status.code() == Some(0), || format!("exit {status}"))?;
        outs.push(std::fs::read(path).unwrap());
    }
    ensure(outs[0] == outs[1], || "JSON differs between 1 and 8 threads".into())?;
    Ok(format!("500 complexes, 256 matrices, {chars} characters, JSON stable"))
}

fn main() {
    std::panic::set_hook(Box::new(|_| {}));
    let min = |m: u64| Duration::from_secs(60 * m);
    let sec = Duration::from_secs;
    let results = [
        criterion(1, "C(1,1,1,1) integral differentials", sec(1), c1111_matrices),
        criterion(2, "homology of C(1,1,1,1)", sec(1), hom_c1111),
        criterion(3, "all-ones homology formula, d <= 12", min(2), theorem_all_ones),
        criterion(4, "Lucas shift invariance", min(1), lucas_samples),
        criterion(5, "involution rank tables", min(10), involution_grid),
        criterion(6, "stable hook cohomology", min(1), stable_hooks),
        criterion(7, "incidence example n=3 d=2 e=1", sec(1), incidence_example),
        criterion(8, "H^1 for p <= d < 2p", min(5), h1_theorem),
        criterion(9, "small-weights H^1 formula", min(15), small_weights),
        criterion(10, "tableau sums and Tab^(3)(2,1)", min(1), tableau_identities),
        criterion(11, "classical determinantal filtration", min(5), classical_filtration),
        criterion(12, "leading monomials", min(5), lead_terms),
        criterion(13, "property suites and determinism", min(10), property_suites),
    ];
    let failed = results.iter().filter(|ok| !**ok).count();
    println!("{} of {} criteria passed", results.len() - failed, results.len());
    if failed > 0 {
        std::process::exit(1);
    }
}

//! The full verification suite: one record per check family.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::abelian::{
    degree_sequence, intersection_number, jordan_model, jordan_triples, monomial_intersections, plov,
    positivity_sequence, pullback, random_unimodular, verify_bounds, AbelianModel, BoundsConfig, NsClass,
    PositivityConfig, UnipotentModel,
};
use crate::error::Result;
use crate::incidence::build_matrix;
use crate::lefschetz::{
    build_y, prop51_condition, symfun_lefschetz_matrix, unimodality_report, verify_bracket, verify_full_rank,
    verify_hard_lefschetz,
};
use crate::linalg::{polydet, Degree, PolyMatrix, Rational, RationalMatrix, RationalPoly};
use crate::partitions::{count, enumerate};
use crate::report::{Record, Report};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteConfig {
    pub seed: u64,
    /// Ample tuples per weak-positivity check.
    pub samples: usize,
    /// Largest `dk` in the rank and window sweep and the unimodality check.
    pub sweep_max: u32,
    pub sl2_max: u32,
    pub symfun_max: u32,
    /// Largest `d` for the plov formula.
    pub plov_max_d: usize,
    /// Largest `d` for the monomial, positivity and conjugate checks.
    pub dynamics_max_d: usize,
    pub conjugates: usize,
    /// Random instances per property family.
    pub property_cases: usize,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self {
            seed: 0,
            samples: 8,
            sweep_max: 24,
            sl2_max: 16,
            symfun_max: 12,
            plov_max_d: 5,
            dynamics_max_d: 4,
            conjugates: 100,
            property_cases: 40,
        }
    }
}

fn q(x: i64) -> Rational {
    Rational::from_integer(x.into())
}

/// `(k, d)` with `k, d ≥ 1` and `dk ≤ max`.
fn grid(max: u32) -> Vec<(u32, u32)> {
    (1..=max).flat_map(|k| (1..=max / k).map(move |d| (k, d))).collect()
}

/// Runs `f`, turning an error into a failed record.
fn guarded(name: &str, anchor: &str, f: impl FnOnce() -> Result<Record>) -> Record {
    f().unwrap_or_else(|e| Record::check(name, anchor, false).with("error", e.to_string()))
}

fn first_failure<T: Clone + Send>(items: Vec<(T, bool)>) -> (usize, Option<T>) {
    let n = items.len();
    (n, items.into_iter().find(|(_, ok)| !ok).map(|(t, _)| t))
}

fn pair(k: u32, d: u32) -> String {
    format!("({k},{d})")
}

pub const DISPLAYED_A436: [[i64; 5]; 4] = [[1, 1, 0, 0, 0], [1, 0, 1, 1, 0], [0, 1, 0, 2, 0], [0, 0, 0, 2, 1]];
pub const DISPLAYED_A437: [[i64; 4]; 5] = [[1, 1, 0, 0], [0, 2, 0, 0], [2, 0, 1, 0], [0, 1, 1, 1], [0, 0, 0, 3]];

pub fn displayed_matrices() -> Record {
    let (name, anchor) =
        ("displayed_matrices", "A_{4,3,6}, A_{4,3,7} as displayed, both of rank 4, product invertible");
    guarded(name, anchor, || {
        let a6 = build_matrix(4, 3, 6)?;
        let a7 = build_matrix(4, 3, 7)?;
        let exact6 = a6.to_i64().iter().map(Vec::as_slice).eq(DISPLAYED_A436.iter().map(|r| &r[..]));
        let exact7 = a7.to_i64().iter().map(Vec::as_slice).eq(DISPLAYED_A437.iter().map(|r| &r[..]));
        let (r6, r7) = (a6.to_rational().rank(), a7.to_rational().rank());
        let det = a6.to_rational().matmul(&a7.to_rational())?.det()?;
        Ok(Record::check(name, anchor, exact6 && exact7 && r6 == 4 && r7 == 4 && !det.is_zero())
            .with("exact", exact6 && exact7)
            .with("ranks", vec![r6, r7])
            .with("product_det", det))
    })
}

pub fn full_rank_sweep(max: u32) -> Record {
    let (name, anchor) =
        ("full_rank_sweep", "rank A_{k,d,n} follows the case split and every window product is invertible");
    guarded(name, anchor, || {
        let cells = grid(max)
            .into_par_iter()
            .map(|(k, d)| {
                let ranks = verify_full_rank(k, d)?.all_full();
                let mut windows = true;
                let mut n = 0;
                while 2 * n < k * d {
                    let h = verify_hard_lefschetz(k, d, n)?;
                    windows &= h.invertible() && h.size == count(k, d, n)? as usize;
                    n += 1;
                }
                Ok((pair(k, d), ranks && windows))
            })
            .collect::<Result<Vec<_>>>()?;
        let (checked, failure) = first_failure(cells);
        Ok(Record::check(name, anchor, failure.is_none())
            .with("pairs", checked)
            .with("max_dk", max)
            .with("first_failure", failure))
    })
}

pub fn sl2_consistency(max: u32) -> Record {
    let (name, anchor) =
        ("sl2_consistency", "Y equals A_{k,d,n}ᵀ, H has weights Σe_i(k−2i), and [H,X]=2X, [H,Y]=−2Y, [X,Y]=H");
    guarded(name, anchor, || {
        let cells = grid(max)
            .into_par_iter()
            .map(|(k, d)| {
                let mut ok = verify_bracket(k, d)?.holds();
                for n in 1..=k * d {
                    ok &= build_y(k, d, n)? == build_matrix(k, d, n)?.transpose_rational();
                }
                Ok((pair(k, d), ok))
            })
            .collect::<Result<Vec<_>>>()?;
        let (checked, failure) = first_failure(cells);
        Ok(Record::check(name, anchor, failure.is_none()).with("pairs", checked).with("first_failure", failure))
    })
}

pub fn symfun_consistency(max: u32) -> Record {
    let (name, anchor) =
        ("symfun_consistency", "multiplication by the hyperplane class on Sym^d(P^k) equals A_{k,d,n}ᵀ");
    guarded(name, anchor, || {
        let cells = grid(max)
            .into_par_iter()
            .map(|(k, d)| {
                let mut ok = true;
                for n in 1..=k * d {
                    ok &= symfun_lefschetz_matrix(k, d, n)? == build_matrix(k, d, n)?.transpose_rational();
                }
                Ok((pair(k, d), ok))
            })
            .collect::<Result<Vec<_>>>()?;
        let (checked, failure) = first_failure(cells);
        Ok(Record::check(name, anchor, failure.is_none()).with("pairs", checked).with("first_failure", failure))
    })
}

pub fn unimodality(max: u32) -> Record {
    let (name, anchor) = ("unimodality", "p(k,d,·) is unimodal and turns exactly at dk/2");
    guarded(name, anchor, || {
        let cells = grid(max)
            .into_par_iter()
            .map(|(k, d)| Ok((pair(k, d), unimodality_report(k, d)?.holds())))
            .collect::<Result<Vec<_>>>()?;
        let (checked, failure) = first_failure(cells);
        Ok(Record::check(name, anchor, failure.is_none()).with("pairs", checked).with("first_failure", failure))
    })
}

pub fn midpoint_equality() -> Record {
    let (name, anchor) = ("midpoint_equality", "p(k,d,dk/2−1) = p(k,d,dk/2) exactly for the listed couples");
    guarded(name, anchor, || {
        let mut bad = Vec::new();
        for d in (1..=13).step_by(2) {
            if !prop51_condition(2, d)? || count(2, d, d)? != u64::from(d.div_ceil(2)) {
                bad.push(pair(2, d));
            }
        }
        for (k, d) in [(6, 5), (6, 7), (6, 9), (6, 11), (6, 13), (10, 7)] {
            if !prop51_condition(k, d)? {
                bad.push(pair(k, d));
            }
        }
        // the equality must fail for (2, d) with d even
        for d in (2..=12).step_by(2) {
            if prop51_condition(2, d)? {
                bad.push(pair(2, d));
            }
        }
        Ok(Record::check(name, anchor, bad.is_empty()).with("unexpected", bad))
    })
}

pub fn plov_values(max_d: usize) -> Record {
    let (name, anchor) = ("plov_values", "plov of J_{1,r0} ⊕ J_{1,d0}^{⊕m0} equals m0·d0² + r0²");
    guarded(name, anchor, || {
        let cells = jordan_triples(max_d)
            .into_par_iter()
            .map(|(r0, d0, m0)| {
                let u = UnipotentModel::new(jordan_model(r0, d0, m0)?)?;
                let got = plov(&u)?.plov;
                Ok(((r0, d0, m0, got), got == m0 * d0 * d0 + r0 * r0))
            })
            .collect::<Result<Vec<_>>>()?;
        let lookup =
            |t: (usize, usize, usize)| cells.iter().find(|((a, b, c, _), _)| (*a, *b, *c) == t).map(|((.., p), _)| *p);
        let named = [((0, 2, 1), 4), ((0, 3, 1), 9), ((1, 4, 1), 17)];
        let named_ok =
            named.iter().filter(|((r0, d0, m0), _)| m0 * d0 + r0 <= max_d).all(|&(t, v)| lookup(t) == Some(v));
        let (checked, failure) = first_failure(cells.clone());
        Ok(Record::check(name, anchor, failure.is_none() && named_ok)
            .with("triples", checked)
            .with("plov_0_2_1", lookup((0, 2, 1)))
            .with("plov_0_3_1", lookup((0, 3, 1)))
            .with("plov_1_4_1", lookup((1, 4, 1)))
            .with("first_failure", failure.map(|(a, b, c, p)| format!("({a},{b},{c}) -> {p}"))))
    })
}

/// `S⁻¹·A·S` for a random unimodular `S` with entries in `[-3, 3]`.
fn random_conjugate(a: &RationalMatrix, rng: &mut ChaCha8Rng) -> Result<AbelianModel> {
    let s = random_unimodular(a.rows(), 3, 4 * a.rows() + 4, rng);
    let s_inv = s.inverse().expect("unimodular");
    AbelianModel::new(s_inv.matmul(a)?.matmul(&s)?, None)
}

pub fn jordan_exponent(max_d: usize, conjugates: usize, seed: u64) -> Record {
    let (name, anchor) = ("jordan_exponent", "k = 2d0 − 2 for the Jordan models and k ≤ 2d − 2 on random conjugates");
    guarded(name, anchor, || {
        let mut bad = Vec::new();
        for (r0, d0, m0) in jordan_triples(max_d) {
            if m0 >= 1 && UnipotentModel::new(jordan_model(r0, d0, m0)?)?.k() != 2 * d0 - 2 {
                bad.push(format!("({r0},{d0},{m0})"));
            }
        }
        let mut tested = 0usize;
        for d in 1..=max_d {
            let models: Vec<_> = jordan_triples(d).into_iter().filter(|&(r0, d0, m0)| m0 * d0 + r0 == d).collect();
            let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (d as u64).wrapping_mul(0x9e37_79b9));
            for i in 0..conjugates {
                let (r0, d0, m0) = models[i % models.len()];
                let base = jordan_model(r0, d0, m0)?;
                let conj = random_conjugate(base.a(), &mut rng)?;
                let k = UnipotentModel::new(conj)?.k();
                let expected = UnipotentModel::new(base)?.k();
                if k != expected || k + 2 > 2 * d && k > 0 {
                    bad.push(format!("d={d} conjugate {i}: k={k}"));
                }
                tested += 1;
            }
        }
        Ok(Record::check(name, anchor, bad.is_empty()).with("conjugates", tested).with("failures", bad))
    })
}

pub fn monomial_vanishing(max_d: usize) -> Record {
    let (name, anchor) = ("monomial_vanishing", "v_λ = 0 for every λ with |λ| > dk/2");
    guarded(name, anchor, || {
        let cells = jordan_triples(max_d)
            .into_par_iter()
            .map(|(r0, d0, m0)| {
                let u = UnipotentModel::new(jordan_model(r0, d0, m0)?)?;
                let scan = monomial_intersections(&u)?;
                Ok(((format!("({r0},{d0},{m0})"), scan.values.len()), scan.violations().is_empty()))
            })
            .collect::<Result<Vec<_>>>()?;
        let monomials: usize = cells.iter().map(|((_, n), _)| n).sum();
        let (checked, failure) = first_failure(cells);
        Ok(Record::check(name, anchor, failure.is_none())
            .with("models", checked)
            .with("monomials", monomials)
            .with("first_failure", failure.map(|(t, _)| t)))
    })
}

pub fn positivity_sequences(max_d: usize, cfg: PositivityConfig) -> Record {
    let (name, anchor) =
        ("positivity_sequences", "t_r, …, t_1 exist with Σt < d, sampled positivity, exact vanishing, and r ≤ d − 1");
    guarded(name, anchor, || {
        let cells = jordan_triples(max_d)
            .into_par_iter()
            .map(|(r0, d0, m0)| {
                let u = UnipotentModel::new(jordan_model(r0, d0, m0)?)?;
                if u.k() == 0 {
                    return Ok(None);
                }
                let seq = positivity_sequence(&u, cfg)?;
                Ok(Some((format!("({r0},{d0},{m0}) t={:?}", seq.t), seq.holds())))
            })
            .collect::<Result<Vec<_>>>()?;
        let (checked, failure) = first_failure(cells.into_iter().flatten().collect());
        Ok(Record::check(name, anchor, failure.is_none())
            .with("models", checked)
            .with("samples", cfg.samples)
            .with("seed", cfg.seed)
            .with("first_failure", failure))
    })
}

pub fn degree_growth(max_d: usize, conjugates: usize, seed: u64) -> Record {
    let (name, anchor) = (
        "degree_growth",
        "deg₁(fⁿ) has even degree k with positive leading coefficient; deg_i exponent ≤ 2(d−1)·min(i, d−i)",
    );
    guarded(name, anchor, || {
        let mut models = Vec::new();
        for (r0, d0, m0) in jordan_triples(max_d) {
            models.push((format!("({r0},{d0},{m0})"), jordan_model(r0, d0, m0)?));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(1));
        for d in 2..=max_d.min(3) {
            for i in 0..conjugates {
                let base = jordan_model(0, d, 1)?;
                models.push((format!("conjugate d={d} #{i}"), random_conjugate(base.a(), &mut rng)?));
            }
        }
        let cells = models
            .into_par_iter()
            .map(|(label, model)| {
                let u = UnipotentModel::new(model)?;
                let d = u.d();
                let first = degree_sequence(&u, 1)?;
                let mut ok =
                    first.exponent() == Degree::Finite(u.k()) && first.even_degree() && first.positive_leading();
                for i in 0..=d {
                    let s = degree_sequence(&u, i)?;
                    ok &= s.exponent() <= Degree::Finite(s.exponent_cap(d));
                }
                Ok((label, ok))
            })
            .collect::<Result<Vec<_>>>()?;
        let (checked, failure) = first_failure(cells);
        Ok(Record::check(name, anchor, failure.is_none()).with("models", checked).with("first_failure", failure))
    })
}

fn random_class(d: usize, rng: &mut ChaCha8Rng) -> NsClass {
    let mut m = RationalMatrix::zeros(d, d);
    for i in 0..d {
        for j in i..d {
            let v = q(rng.gen_range(-3..=3));
            m[(i, j)] = v.clone();
            m[(j, i)] = v;
        }
    }
    NsClass::new(m).expect("symmetric")
}

fn random_poly_matrix(n: usize, rng: &mut ChaCha8Rng) -> PolyMatrix {
    let entries = (0..n)
        .map(|_| {
            (0..n)
                .map(|_| {
                    let coeffs: Vec<i64> = (0..rng.gen_range(0..=3)).map(|_| rng.gen_range(-3..=3)).collect();
                    RationalPoly::from_integers(&coeffs)
                })
                .collect()
        })
        .collect();
    PolyMatrix::new(entries).expect("square")
}

/// Partition identities, intersection multilinearity and invariance,
/// `polydet` against evaluation, and seeded report determinism.
pub fn property_suites(cases: usize, seed: u64) -> Record {
    let (name, anchor) = (
        "property_suites",
        "partition symmetry and recurrence, multilinearity, projection formula, polydet homomorphism, determinism",
    );
    guarded(name, anchor, || {
        let mut failures: Vec<String> = Vec::new();

        for (k, d) in grid(24) {
            for n in 0..=k * d {
                let p = count(k, d, n)?;
                let mut ok = p == count(k, d, k * d - n)? && p == count(d, k, n)?;
                ok &= enumerate(k, d, n)?.len() as u64 == p;
                if d > 1 && k > 1 {
                    let rec = count(k, d - 1, n)? + if n >= d { count(k - 1, d, n - d)? } else { 0 };
                    ok &= rec == p;
                }
                if !ok {
                    failures.push(format!("partition identity at ({k},{d},{n})"));
                }
            }
        }

        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for case in 0..cases {
            let d = rng.gen_range(1..=4);
            let classes: Vec<NsClass> = (0..d).map(|_| random_class(d, &mut rng)).collect();
            let base = intersection_number(&classes)?;

            let extra = random_class(d, &mut rng);
            let (a, b) = (q(rng.gen_range(-3..=3)), q(rng.gen_range(-3..=3)));
            let slot = rng.gen_range(0..d);
            let mut mixed = classes.clone();
            mixed[slot] = classes[slot].scale(&a).add(&extra.scale(&b))?;
            let mut other = classes.clone();
            other[slot] = extra;
            if intersection_number(&mixed)? != &a * &base + &b * intersection_number(&other)? {
                failures.push(format!("multilinearity case {case}"));
            }

            let mut swapped = classes.clone();
            swapped.reverse();
            if intersection_number(&swapped)? != base {
                failures.push(format!("symmetry case {case}"));
            }

            let s = random_unimodular(d, 3, 4 * d + 4, &mut rng);
            let pulled = classes.iter().map(|c| pullback(&s, c)).collect::<Result<Vec<_>>>()?;
            if intersection_number(&pulled)? != base {
                failures.push(format!("projection formula case {case}"));
            }

            let pm = random_poly_matrix(rng.gen_range(1..=4), &mut rng);
            let det = polydet(&pm);
            for x in -3..=3 {
                if pm.eval_int(x).det()? != det.eval_int(x) {
                    failures.push(format!("polydet case {case} at {x}"));
                    break;
                }
            }
        }

        let model = jordan_model(1, 2, 1)?;
        let cfg = BoundsConfig { positivity: PositivityConfig { samples: 6, seed }, ..BoundsConfig::default() };
        let render = || -> Result<String> {
            let mut report = Report::new("plovkit", "determinism").configure("seed", seed);
            report.extend(verify_bounds(&model, cfg)?.records);
            Ok(report.to_json())
        };
        let (first, second) = (render()?, render()?);
        if first != second {
            failures.push("seeded report differs between runs".into());
        }
        match Report::from_json(&first) {
            Ok(back) if back.to_json() == first => {}
            _ => failures.push("report JSON does not round-trip".into()),
        }

        Ok(Record::check(name, anchor, failures.is_empty())
            .with("random_cases", cases)
            .with("seed", seed)
            .with("failures", failures))
    })
}

/// Every check family in a fixed order, each with its wall-clock time.
pub fn run_suite_timed(cfg: &SuiteConfig) -> Vec<(Record, Duration)> {
    let positivity = PositivityConfig { samples: cfg.samples, seed: cfg.seed };
    let tasks: Vec<Box<dyn Fn() -> Record + Send + Sync>> = vec![
        Box::new(displayed_matrices),
        Box::new(move || full_rank_sweep(cfg.sweep_max)),
        Box::new(move || sl2_consistency(cfg.sl2_max)),
        Box::new(move || symfun_consistency(cfg.symfun_max)),
        Box::new(move || unimodality(cfg.sweep_max)),
        Box::new(midpoint_equality),
        Box::new(move || plov_values(cfg.plov_max_d)),
        Box::new(move || jordan_exponent(cfg.dynamics_max_d, cfg.conjugates, cfg.seed)),
        Box::new(move || monomial_vanishing(cfg.dynamics_max_d)),
        Box::new(move || positivity_sequences(cfg.dynamics_max_d, positivity)),
        Box::new(move || degree_growth(cfg.dynamics_max_d, 10, cfg.seed)),
        Box::new(move || property_suites(cfg.property_cases, cfg.seed)),
    ];
    tasks
        .par_iter()
        .map(|t| {
            let start = Instant::now();
            let record = t();
            (record, start.elapsed())
        })
        .collect()
}

pub fn run_suite(cfg: &SuiteConfig) -> Vec<Record> {
    run_suite_timed(cfg).into_iter().map(|(r, _)| r).collect()
}

/// The suite wrapped in a report with the configuration echoed.
pub fn suite_report(cfg: &SuiteConfig, version: &str, timing: bool) -> Report {
    let mut report = Report::new("plovkit", version)
        .configure("command", "verify-all")
        .configure("seed", cfg.seed)
        .configure("samples", cfg.samples)
        .configure("sweep_max", cfg.sweep_max)
        .configure("sl2_max", cfg.sl2_max)
        .configure("symfun_max", cfg.symfun_max)
        .configure("plov_max_d", cfg.plov_max_d)
        .configure("dynamics_max_d", cfg.dynamics_max_d)
        .configure("conjugates", cfg.conjugates)
        .configure("property_cases", cfg.property_cases);
    let mut times = BTreeMap::new();
    for (record, elapsed) in run_suite_timed(cfg) {
        times.insert(record.name.clone(), elapsed.as_millis().to_string());
        report.push(record);
    }
    if timing {
        report.timing_ms = Some(times);
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::report::Status;

    fn passes(r: Record) {
        assert_eq!(r.status, Status::Pass, "{r:#?}");
    }

    #[test]
    fn small_instances_pass() {
        passes(displayed_matrices());
        passes(full_rank_sweep(8));
        passes(sl2_consistency(6));
        passes(symfun_consistency(6));
        passes(unimodality(8));
        passes(midpoint_equality());
        passes(plov_values(3));
        passes(jordan_exponent(3, 5, 1));
        passes(monomial_vanishing(3));
        passes(positivity_sequences(3, PositivityConfig::default()));
        passes(degree_growth(3, 2, 1));
        passes(property_suites(5, 1));
    }

    #[test]
    fn grid_bounds() {
        let g = grid(4);
        assert!(g.contains(&(4, 1)) && g.contains(&(2, 2)) && g.contains(&(1, 4)));
        assert!(!g.contains(&(3, 2)));
    }

    #[test]
    fn errors_become_failures() {
        let r = guarded("x", "y", || Err(crate::error::Error::invalid("boom")));
        assert_eq!(r.status, Status::Fail);
        assert!(r.values.contains_key("error"));
    }
}

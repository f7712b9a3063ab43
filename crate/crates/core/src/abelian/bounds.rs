//! Every growth bound instantiated on one model, as report records.

use serde::Serialize;

use super::dynamics::{
    degree_sequence, monomial_intersections, nilpotent_data, plov, DegreeSequence, NilpotentData, Plov, UnipotentModel,
};
use super::model::AbelianModel;
use super::positivity::{positivity_polynomial_check, positivity_sequence, PositivityConfig, PositivitySequence};
use super::reduce::quasi_unipotent_reduce;
use crate::error::{Error, Result};
use crate::lefschetz::prop51_condition;
use crate::linalg::Degree;
use crate::report::Record;

/// Couples `(k, d)` beyond `k = 2`, `d` odd, with the sharper bound `(k/2+1)d - 1`.
pub const MIDPOINT_COUPLES: [(usize, usize); 6] = [(6, 5), (6, 7), (6, 9), (6, 11), (6, 13), (10, 7)];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct BoundsConfig {
    pub positivity: PositivityConfig,
    /// Skip the exhaustive monomial scan above this many partitions.
    pub monomial_limit: usize,
}

impl Default for BoundsConfig {
    fn default() -> Self {
        Self { positivity: PositivityConfig::default(), monomial_limit: 5000 }
    }
}

/// Whether the sharper midpoint bound applies to `(k, d)`.
pub fn midpoint_bound_applies(k: usize, d: usize) -> bool {
    (k == 2 && d % 2 == 1) || MIDPOINT_COUPLES.contains(&(k, d))
}

#[derive(Clone, Debug)]
pub struct DynReport {
    pub d: usize,
    /// Iterate taken to make the action unipotent.
    pub iterate: u64,
    pub nilpotent: NilpotentData,
    pub plov: Plov,
    pub degrees: Vec<DegreeSequence>,
    pub positivity: Option<PositivitySequence>,
    pub records: Vec<Record>,
}

impl DynReport {
    pub fn k(&self) -> usize {
        self.nilpotent.k
    }

    pub fn r(&self) -> usize {
        self.nilpotent.k / 2
    }

    pub fn degree_exponents(&self) -> Vec<Degree> {
        self.degrees.iter().map(DegreeSequence::exponent).collect()
    }

    pub fn passed(&self) -> bool {
        !self.records.iter().any(Record::failed)
    }
}

fn partition_total(k: usize, d: usize) -> usize {
    // C(k+d, d), saturating
    let mut acc: u128 = 1;
    for i in 1..=d as u128 {
        acc = acc * (k as u128 + i) / i;
        if acc > usize::MAX as u128 {
            return usize::MAX;
        }
    }
    acc as usize
}

pub fn verify_bounds(model: &AbelianModel, cfg: BoundsConfig) -> Result<DynReport> {
    let reduction = quasi_unipotent_reduce(model)?;
    let u = UnipotentModel::new(reduction.model)?;
    let d = u.d();
    let nd = nilpotent_data(&u);
    let k = nd.k;
    let r = k / 2;
    let pl = plov(&u)?;
    let p = pl.plov;
    let mut records = vec![
        Record::check("k_even", "the nilpotency exponent k is even", k.is_multiple_of(2))
            .with("k", k)
            .with("iterate", reduction.iterate)
            .with("jordan_sizes", nd.jordan_sizes.clone()),
        Record::check("k_at_most_2d_minus_2", "k ≤ 2d − 2", k + 2 <= 2 * d || k == 0).with("k", k).with("d", d),
        Record::check("plov_k_bound", "plov ≤ (k/2 + 1)·d", 2 * p <= (k + 2) * d)
            .with("plov", p)
            .with("bound_times_2", (k + 2) * d),
        Record::check("plov_square_bound", "plov ≤ d²", p <= d * d).with("plov", p).with("bound", d * d),
    ];

    let degrees = (0..=d).map(|i| degree_sequence(&u, i)).collect::<Result<Vec<_>>>()?;
    let deg1 = &degrees[1];
    records.push(
        Record::check(
            "degree_one_growth",
            "deg₁(fⁿ) grows like n^k with positive leading coefficient",
            deg1.exponent() == Degree::Finite(k) && deg1.positive_leading(),
        )
        .with("exponent", deg1.exponent())
        .with("polynomial", &deg1.poly),
    );
    let exponent_ok = degrees
        .iter()
        .all(|s| s.even_degree() && s.positive_leading() && s.exponent() <= Degree::Finite(s.exponent_cap(d)));
    records.push(
        Record::check(
            "degree_exponents",
            "deg_i(fⁿ) has even degree ≤ 2(d−1)·min(i, d−i) and positive leading coefficient",
            exponent_ok,
        )
        .with("exponents", degrees.iter().map(DegreeSequence::exponent).collect::<Vec<_>>()),
    );

    if partition_total(k, d) <= cfg.monomial_limit {
        let scan = monomial_intersections(&u)?;
        let violations = scan.violations();
        records.push(
            Record::check("monomial_vanishing", "v_λ = 0 whenever |λ| > dk/2", violations.is_empty())
                .with("checked", scan.values.len())
                .with("violations", violations.iter().map(|p| p.to_string()).collect::<Vec<_>>()),
        );
        let top = scan.max_nonvanishing_weight().map(|w| w as usize);
        let bound = top.map(|w| d + w);
        records.push(
            Record::check("monomial_bound", "plov ≤ d + max{|λ| : v_λ ≠ 0}", bound.is_some_and(|b| p <= b))
                .with("plov", p)
                .with("bound", bound),
        );
        if let Some(b) = bound {
            records.push(
                Record::observed("monomial_gap", "gap between the monomial bound and plov")
                    .with("gap", b as i64 - p as i64),
            );
        }
    }

    records.push(
        Record::observed("h_exponent", "k equals max{i : N^i H ≠ 0}")
            .with("k", k)
            .with("h_exponent", nd.h_exponent)
            .with("matches", nd.h_exponent_matches()),
    );

    let positivity = if k > 0 && k.is_multiple_of(2) {
        let seq = positivity_sequence(&u, cfg.positivity)?;
        let mut poly_ok = true;
        let mut poly_count = 0usize;
        if seq.complete() {
            for j in 0..r {
                for l in 0..=d - seq.s[j] {
                    poly_ok &= positivity_polynomial_check(&u, &seq, j, l)?.holds();
                    poly_count += 1;
                }
            }
        }
        records.push(
            Record::check(
                "positivity_sequence",
                "positive t_r, …, t_1 with Σt < d and the positivity and vanishing assertions (positivity sampled)",
                seq.holds(),
            )
            .with("t", seq.t.clone())
            .with("s", seq.s.clone())
            .with("samples", seq.config.samples)
            .with("seed", seq.config.seed),
        );
        records.push(
            Record::check(
                "positivity_polynomials",
                "M_j·((f^m)^*H)^l·H^{d−s_j−l} is a positive polynomial of even degree ≤ (2r−2j)l",
                seq.complete() && poly_ok,
            )
            .with("checked", poly_count),
        );
        Some(seq)
    } else {
        None
    };
    records.push(Record::check("r_at_most_d_minus_1", "r = k/2 ≤ d − 1", r < d || k == 0).with("r", r));

    if midpoint_bound_applies(k, d) {
        let midpoint = prop51_condition(k as u32, d as u32)?;
        let bound = (k / 2 + 1) * d - 1;
        records.push(
            Record::check("midpoint_bound", "plov ≤ (k/2 + 1)·d − 1 for the listed couples", midpoint && p <= bound)
                .with("plov", p)
                .with("bound", bound)
                .with("midpoint_equality", midpoint),
        );
    }
    if nd.jordan_sizes.first() == Some(&3) {
        let bound = 2 * (d / 2) + d;
        records.push(
            Record::check(
                "jordan_three_bound",
                "plov ≤ 2⌊d/2⌋ + d when the largest Jordan block has size 3",
                p <= bound,
            )
            .with("plov", p)
            .with("bound", bound),
        );
    }
    if k > 0 {
        let lower = d + r * (r + 1);
        records.push(
            Record::observed("conjectural_lower_bound", "plov ≥ d + r(r+1)")
                .with("plov", p)
                .with("lower", lower)
                .with("holds", p >= lower),
        );
    }
    if (k, d) == (4, 4) {
        records.push(
            Record::observed("k4_d4_sharper_bound", "plov ≤ 10 for (k, d) = (4, 4)")
                .with("plov", p)
                .with("holds", p <= 10),
        );
    }

    Ok(DynReport { d, iterate: reduction.iterate, nilpotent: nd, plov: pl, degrees, positivity, records })
}

/// `plov`, `gkdim` and `k` after unipotent reduction.
pub fn model_plov(model: &AbelianModel) -> Result<(Plov, NilpotentData)> {
    let reduction = quasi_unipotent_reduce(model)?;
    let u = UnipotentModel::new(reduction.model)?;
    Ok((plov(&u)?, nilpotent_data(&u)))
}

/// Reduction followed by `UnipotentModel::new`.
pub fn unipotent_part(model: &AbelianModel) -> Result<UnipotentModel> {
    let reduction = quasi_unipotent_reduce(model)?;
    UnipotentModel::new(reduction.model).map_err(|e| match e {
        Error::NotUnipotent => Error::invalid("reduction did not produce a unipotent action"),
        other => other,
    })
}

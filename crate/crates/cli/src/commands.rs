use std::fs;
use std::time::Instant;

use plovkit_core::abelian::{
    degree_sequence, jordan_model, nilpotent_data, plov, quasi_unipotent_reduce, verify_bounds, AbelianModel,
    BoundsConfig, PositivityConfig, UnipotentModel,
};
use plovkit_core::incidence::build_matrix;
use plovkit_core::lefschetz::{
    expected_rank, unimodality_report, verify_bracket, verify_full_rank, verify_hard_lefschetz,
};
use plovkit_core::linalg::Degree;
use plovkit_core::partitions::{count, enumerate, gaussian_binomial};
use plovkit_core::report::{Record, Report};
use plovkit_core::suite::{suite_report, SuiteConfig};

use crate::{Cli, Command, Failure, Global, KdOptN, Kdn, LefschetzAction, ModelArgs, PartitionAction};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// A rendered-ready command result: the report plus its plain-text and
/// tabular views.
pub struct Output {
    pub report: Report,
    pub text: String,
    pub table: Option<Table>,
    /// Append the per-record lines to the text view.
    pub detail: bool,
}

pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

type Outcome = Result<Output, Failure>;

pub fn run(cli: &Cli) -> Outcome {
    let g = &cli.global;
    let start = Instant::now();
    let mut out = match &cli.command {
        Command::Partition { action: PartitionAction::List(a) } => partition_list(g, a),
        Command::Partition { action: PartitionAction::Count(a) } => partition_count(g, a),
        Command::Matrix(a) => matrix(g, a),
        Command::Rank(a) => rank(g, a),
        Command::Lefschetz { action: LefschetzAction::Verify(a) } => lefschetz(g, a),
        Command::Plov(m) => plov_cmd(g, m),
        Command::Degrees(a) => degrees(g, &a.model, a.i),
        Command::Bounds(a) => bounds(g, &a.model, a.samples),
        Command::VerifyAll(a) => {
            let cfg = SuiteConfig {
                seed: g.seed,
                samples: a.samples,
                sweep_max: a.sweep_max,
                sl2_max: a.sl2_max,
                symfun_max: a.symfun_max,
                conjugates: a.conjugates,
                ..SuiteConfig::default()
            };
            for max in [cfg.sweep_max, cfg.sl2_max, cfg.symfun_max] {
                if max > g.max_dk {
                    return Err(Failure::Invalid(format!(
                        "sweep bound {max} exceeds the ceiling --max-dk {}",
                        g.max_dk
                    )));
                }
            }
            let report = suite_report(&cfg, VERSION, g.timing);
            Ok(Output { text: String::new(), table: None, report, detail: true })
        }
    }?;
    if g.timing && out.report.timing_ms.is_none() {
        let mut t = std::collections::BTreeMap::new();
        t.insert("total".to_owned(), start.elapsed().as_millis().to_string());
        out.report.timing_ms = Some(t);
    }
    Ok(out)
}

fn base_report(g: &Global, command: &str) -> Report {
    Report::new("plovkit", VERSION).configure("command", command).configure("seed", g.seed)
}

fn check_kd(g: &Global, k: u32, d: u32) -> Result<(), Failure> {
    if k == 0 || d == 0 {
        return Err(Failure::Invalid("k and d must be positive".into()));
    }
    if u64::from(k) * u64::from(d) > u64::from(g.max_dk) {
        return Err(Failure::Invalid(format!("dk = {} exceeds the ceiling --max-dk {}", k * d, g.max_dk)));
    }
    Ok(())
}

fn check_n(k: u32, d: u32, n: u32) -> Result<(), Failure> {
    if n > k * d {
        return Err(Failure::Invalid(format!("n = {n} exceeds dk = {}", k * d)));
    }
    Ok(())
}

fn partition_list(g: &Global, a: &Kdn) -> Outcome {
    check_kd(g, a.k, a.d)?;
    check_n(a.k, a.d, a.n)?;
    let list = enumerate(a.k, a.d, a.n)?;
    let labels: Vec<String> = list.iter().map(ToString::to_string).collect();
    let mut report = base_report(g, "partition list").configure("k", a.k).configure("d", a.d).configure("n", a.n);
    report.push(
        Record::check("partition_list", "P(k,d,n) in decreasing lexicographic order", true)
            .with("count", list.len())
            .with("partitions", labels.clone()),
    );
    let rows = list
        .iter()
        .enumerate()
        .map(|(i, p)| {
            let exps: Vec<String> = p.exponent_form().iter().rev().map(ToString::to_string).collect();
            vec![i.to_string(), p.to_string(), exps.join(" ")]
        })
        .collect();
    let mut text = labels.join("\n");
    text.push('\n');
    Ok(Output {
        report,
        text,
        table: Some(Table { header: vec!["index".into(), "partition".into(), "exponents_k_to_0".into()], rows }),
        detail: false,
    })
}

fn partition_count(g: &Global, a: &KdOptN) -> Outcome {
    check_kd(g, a.k, a.d)?;
    let mut report = base_report(g, "partition count").configure("k", a.k).configure("d", a.d);
    match a.n {
        Some(n) => {
            check_n(a.k, a.d, n)?;
            let c = count(a.k, a.d, n)?;
            report = report.configure("n", n);
            report.push(Record::check("partition_count", "p(k,d,n)", true).with("count", c));
            Ok(Output {
                report,
                text: format!("{c}\n"),
                table: Some(Table {
                    header: vec!["n".into(), "count".into()],
                    rows: vec![vec![n.to_string(), c.to_string()]],
                }),
                detail: false,
            })
        }
        None => {
            let counts = gaussian_binomial(a.k, a.d)?;
            report.push(
                Record::check("partition_counts", "p(k,d,n) for 0 ≤ n ≤ dk", true).with("counts", counts.clone()),
            );
            let rows: Vec<Vec<String>> =
                counts.iter().enumerate().map(|(n, c)| vec![n.to_string(), c.to_string()]).collect();
            let text = rows.iter().map(|r| format!("{} {}\n", r[0], r[1])).collect();
            Ok(Output {
                report,
                text,
                table: Some(Table { header: vec!["n".into(), "count".into()], rows }),
                detail: false,
            })
        }
    }
}

fn matrix(g: &Global, a: &Kdn) -> Outcome {
    check_kd(g, a.k, a.d)?;
    let m = build_matrix(a.k, a.d, a.n)?;
    let rows: Vec<String> = m.row_labels().iter().map(ToString::to_string).collect();
    let cols: Vec<String> = m.col_labels().iter().map(ToString::to_string).collect();
    let mut report = base_report(g, "matrix").configure("k", a.k).configure("d", a.d).configure("n", a.n);
    report.push(
        Record::check("incidence_matrix", "A_{k,d,n}: rows P(k,d,n−1), columns P(k,d,n)", true)
            .with("rows", rows.clone())
            .with("cols", cols.clone())
            .with("entries", m.entries().to_vec()),
    );
    let body: Vec<Vec<String>> = m
        .entries()
        .iter()
        .zip(&rows)
        .map(|(r, label)| std::iter::once(label.clone()).chain(r.iter().map(ToString::to_string)).collect())
        .collect();
    let width = rows.iter().chain(&cols).map(String::len).max().unwrap_or(1);
    let mut text = format!("{:>width$}", "");
    for c in &cols {
        text.push_str(&format!(" {c:>width$}"));
    }
    text.push('\n');
    for r in &body {
        text.push_str(&format!("{:>width$}", r[0]));
        for v in &r[1..] {
            text.push_str(&format!(" {v:>width$}"));
        }
        text.push('\n');
    }
    let header = std::iter::once("row".to_owned()).chain(cols).collect();
    Ok(Output { report, text, table: Some(Table { header, rows: body }), detail: false })
}

fn rank(g: &Global, a: &KdOptN) -> Outcome {
    check_kd(g, a.k, a.d)?;
    let mut report = base_report(g, "rank").configure("k", a.k).configure("d", a.d);
    let anchor = "rank A_{k,d,n} = p(n−1) up to ⌈dk/2⌉ and p(n) beyond ⌊dk/2⌋";
    let header = vec!["n".into(), "rows".into(), "cols".into(), "rank".into(), "expected".into()];
    match a.n {
        Some(n) => {
            let m = build_matrix(a.k, a.d, n)?;
            let r = m.to_rational().rank();
            let expected = expected_rank(a.k, a.d, n)?;
            let (rows, cols) = m.shape();
            report = report.configure("n", n);
            report.push(Record::check("rank", anchor, r == expected).with("rank", r).with("expected", expected));
            let row = vec![n.to_string(), rows.to_string(), cols.to_string(), r.to_string(), expected.to_string()];
            Ok(Output { report, text: format!("{r}\n"), table: Some(Table { header, rows: vec![row] }), detail: false })
        }
        None => {
            let t = verify_full_rank(a.k, a.d)?;
            report.push(
                Record::check("rank_table", anchor, t.all_full())
                    .with("ranks", t.rows.iter().map(|r| r.rank).collect::<Vec<_>>())
                    .with("first_failure", t.first_failure()),
            );
            let rows: Vec<Vec<String>> = t
                .rows
                .iter()
                .map(|r| [r.n as usize, r.rows, r.cols, r.rank, r.expected].iter().map(ToString::to_string).collect())
                .collect();
            let mut text = String::from("n rows cols rank expected\n");
            for r in &rows {
                text.push_str(&r.join(" "));
                text.push('\n');
            }
            Ok(Output { report, text, table: Some(Table { header, rows }), detail: false })
        }
    }
}

fn lefschetz(g: &Global, a: &KdOptN) -> Outcome {
    check_kd(g, a.k, a.d)?;
    let (k, d) = (a.k, a.d);
    let mut report = base_report(g, "lefschetz verify").configure("k", k).configure("d", d);
    let windows: Vec<u32> = match a.n {
        Some(n) => {
            report = report.configure("n", n);
            vec![n]
        }
        None => (0..).take_while(|n| 2 * n < k * d).collect(),
    };
    let mut dets = Vec::new();
    let mut ok = true;
    for &n in &windows {
        let h = verify_hard_lefschetz(k, d, n)?;
        ok &= h.invertible();
        dets.push(h.det);
    }
    report.push(
        Record::check("window_products", "A_{k,d,n+1} ⋯ A_{k,d,dk−n} is invertible for 0 ≤ n < dk/2", ok)
            .with("n", windows)
            .with("determinants", dets),
    );
    if a.n.is_none() {
        let t = verify_full_rank(k, d)?;
        report.push(
            Record::check("full_rank", "every A_{k,d,n} has full rank", t.all_full())
                .with("first_failure", t.first_failure()),
        );
        let b = verify_bracket(k, d)?;
        report.push(
            Record::check("sl2_brackets", "[H,X]=2X, [H,Y]=−2Y, [X,Y]=H on Sym^d W_k", b.holds())
                .with("weights_ok", b.weights_ok)
                .with("failure", b.failure.as_ref().map(|f| format!("{} at grade {}", f.identity, f.grade))),
        );
        let u = unimodality_report(k, d)?;
        report.push(
            Record::check("unimodality", "p(k,d,·) is unimodal and turns exactly at dk/2", u.holds())
                .with("counts", u.counts),
        );
    }
    Ok(Output { text: String::new(), table: None, report, detail: true })
}

fn load_model(m: &ModelArgs) -> Result<(AbelianModel, String), Failure> {
    match (&m.jordan, &m.matrix) {
        (Some(spec), _) => {
            let parts: Vec<usize> = spec
                .split(',')
                .map(|s| s.trim().parse::<usize>())
                .collect::<Result<_, _>>()
                .map_err(|_| Failure::Invalid(format!("--jordan expects r0,d0,m0, got {spec:?}")))?;
            let [r0, d0, m0] = parts[..] else {
                return Err(Failure::Invalid(format!("--jordan expects three integers, got {spec:?}")));
            };
            Ok((jordan_model(r0, d0, m0)?, format!("jordan {r0},{d0},{m0}")))
        }
        (None, Some(path)) => {
            let text = fs::read_to_string(path).map_err(|e| Failure::Invalid(format!("{}: {e}", path.display())))?;
            Ok((AbelianModel::from_json(&text)?, format!("file {}", path.display())))
        }
        (None, None) => Err(Failure::Invalid("give --jordan or --matrix".into())),
    }
}

fn plov_cmd(g: &Global, m: &ModelArgs) -> Outcome {
    let (model, source) = load_model(m)?;
    let reduction = quasi_unipotent_reduce(&model)?;
    let u = UnipotentModel::new(reduction.model)?;
    let p = plov(&u)?;
    let nd = nilpotent_data(&u);
    let mut report = base_report(g, "plov").configure("model", source).configure("d", model.d());
    report.push(
        Record::check("plov", "plov = deg Δ_n^d, gkdim = plov + 1", true)
            .with("plov", p.plov)
            .with("gkdim", p.gkdim)
            .with("k", nd.k)
            .with("iterate", reduction.iterate)
            .with("jordan_sizes", nd.jordan_sizes)
            .with("leading_coefficient", p.leading_coefficient)
            .with("volume", p.volume),
    );
    let mut text = format!("plov={} gkdim={} k={}", p.plov, p.gkdim, nd.k);
    if reduction.iterate > 1 {
        text.push_str(&format!(" iterate={}", reduction.iterate));
    }
    text.push('\n');
    Ok(Output { report, text, table: None, detail: false })
}

fn degrees(g: &Global, m: &ModelArgs, only: Option<usize>) -> Outcome {
    let (model, source) = load_model(m)?;
    let reduction = quasi_unipotent_reduce(&model)?;
    let u = UnipotentModel::new(reduction.model)?;
    let d = u.d();
    let indices: Vec<usize> = match only {
        Some(i) if i > d => return Err(Failure::Invalid(format!("--i {i} exceeds d = {d}"))),
        Some(i) => vec![i],
        None => (0..=d).collect(),
    };
    let mut report = base_report(g, "degrees").configure("model", source).configure("d", d);
    let mut text = String::new();
    let mut rows = Vec::new();
    for i in indices {
        let s = degree_sequence(&u, i)?;
        let e = s.exponent();
        let cap = s.exponent_cap(d);
        report.push(
            Record::check(
                format!("deg_{i}"),
                "even degree ≤ 2(d−1)·min(i, d−i) with positive leading coefficient",
                s.even_degree() && s.positive_leading() && e <= Degree::Finite(cap),
            )
            .with("polynomial", &s.poly)
            .with("exponent", e)
            .with("bound", cap),
        );
        text.push_str(&format!("deg_{i}(f^n) = {}  [degree {e}, bound {cap}]\n", s.poly));
        rows.push(vec![i.to_string(), e.to_string(), cap.to_string(), s.poly.to_string()]);
    }
    if reduction.iterate > 1 {
        text.push_str(&format!("(computed for the unipotent iterate f^{})\n", reduction.iterate));
    }
    let header = vec!["i".into(), "exponent".into(), "bound".into(), "polynomial".into()];
    Ok(Output { report, text, table: Some(Table { header, rows }), detail: false })
}

fn bounds(g: &Global, m: &ModelArgs, samples: usize) -> Outcome {
    let (model, source) = load_model(m)?;
    let cfg = BoundsConfig { positivity: PositivityConfig { samples, seed: g.seed }, ..BoundsConfig::default() };
    let rep = verify_bounds(&model, cfg)?;
    let mut report =
        base_report(g, "bounds").configure("model", source).configure("d", rep.d).configure("samples", samples);
    let text = format!("plov={} gkdim={} k={} iterate={}\n", rep.plov.plov, rep.plov.gkdim, rep.k(), rep.iterate);
    report.extend(rep.records);
    Ok(Output { report, text, table: None, detail: true })
}

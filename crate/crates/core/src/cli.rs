//! Batch front-end: one subcommand per module, JSON or CSV reports.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_rational::{BigRational, Rational64};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::audit::{kvn_fixture, AuditConstants};
use crate::charsums::{gauss_sum, mixed_sum_sweep};
use crate::counting::{
    census_quadruples, census_quadruples_partial, quadratic_multiplicative_example, quadratic_multiplicative_value,
    t_op, Coloring,
};
use crate::error::{Error, Result};
use crate::field::FieldCtx;
use crate::harmonic::{add_transform, mult_spectrum, norm_qm, norm_u2_plus, norm_u2_times, norm_u3_plus, NormValue};
use crate::qm::{
    baby_count, box_measure, check_bohr_density, counting_lemma_check, HGroup, QMSystem, QMSystemJson, TrigPoly,
    TrigPolyJson,
};
use crate::ramsey::{dependent_random_choice, extremal_coloring, find_rich_color, PairColoring, PairColoringJson, RichMode};
use crate::regularity::{kvn_energy_increment, quad_decompose, quad_decompose_unchecked};
use crate::search::{fp_coloring_scan, interval_backtrack, interval_frontier, ScanMode};
use crate::signal::{Signal, SignalJson};
use crate::verify::run_suite;

pub const SCHEMA: &str = "monoquad-report/1";

#[derive(Debug, Parser)]
#[command(name = "monoquad", version, about = "Monochromatic {x, y, x+y, xy} toolkit over F_p")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Global {
    /// Prime modulus
    #[arg(long, global = true)]
    pub p: Option<u64>,
    /// Number of colours
    #[arg(long, global = true)]
    pub r: Option<usize>,
    /// Dimension of random QM systems
    #[arg(long, global = true)]
    pub d: Option<usize>,
    /// Accuracy parameter (epsilon or delta, depending on the command)
    #[arg(long, global = true)]
    pub eps: Option<f64>,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Worker threads; results do not depend on it
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Report path; stdout if absent
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// JSON file with audit constants
    #[arg(long, global = true)]
    pub audit: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Example {
    Sec2,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// u2+, u2x, u3+, QM and L^p norms of a signal
    Norms {
        #[arg(long)]
        input: Option<PathBuf>,
    },
    /// Additive and multiplicative spectra
    Transform {
        #[arg(long)]
        input: Option<PathBuf>,
    },
    /// T(f1, f2, f3, f4)
    Count {
        #[arg(long, value_enum)]
        example: Option<Example>,
    },
    /// Per-colour monochromatic quadruple counts
    Census {
        /// JSON array with one colour (or null) per element of F_p
        #[arg(long)]
        coloring: PathBuf,
    },
    /// Minimum and mean quadruple counts over colourings of F_p
    Scan {
        /// Sample this many colourings instead of enumerating all
        #[arg(long)]
        random: Option<u64>,
    },
    /// Bohr set density and box measure
    Bohr {
        #[arg(long)]
        psi: Option<PathBuf>,
    },
    /// Baby counting lemma: E_x F(Psi(x)) against the lattice sum
    Equidist {
        #[arg(long)]
        psi: Option<PathBuf>,
        #[arg(long)]
        trig: Option<PathBuf>,
    },
    /// Counting lemma margin and budget on S = B(Psi, eps)
    Countlemma {
        #[arg(long)]
        psi: Option<PathBuf>,
        #[arg(long)]
        trig: Option<PathBuf>,
    },
    /// Quadratic decomposition f = sum lambda_i phi_i + g
    Decompose {
        #[arg(long)]
        input: Option<PathBuf>,
        /// Enforce eps >= 4 p^{-1/8}
        #[arg(long)]
        strict: bool,
    },
    /// Energy increment until all residual QM norms are at most delta (--eps)
    Kvn {
        /// Signal files; the built-in fixture if none
        #[arg(long)]
        input: Vec<PathBuf>,
        #[arg(long, default_value_t = 32)]
        resolution: u64,
    },
    /// Rich colour of a pair colouring, or the extremal colouring of F_2^r
    Ramsey {
        #[arg(long)]
        coloring: Option<PathBuf>,
        #[arg(long)]
        oracle: bool,
    },
    /// Dependent random choice on a random bipartite instance
    Drc {
        #[arg(long, default_value_t = 8)]
        n: usize,
    },
    /// Mixed quadratic-times-multiplicative sum sweep
    Charsum {
        #[arg(long, default_value_t = 100)]
        count: usize,
    },
    /// Backtracking over colourings of {1, ..., N}
    Search {
        /// A single N; otherwise sweep N upward
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, default_value_t = 60)]
        n_max: usize,
        #[arg(long, default_value_t = 10_000_000)]
        budget: u64,
        #[arg(long)]
        distinct: bool,
    },
    /// Runs the property suite of every module
    Verify,
}

/// Machine-readable result plus the lines of the human summary.
pub struct Report {
    pub command: String,
    pub ok: bool,
    pub data: Value,
    pub summary: Vec<(String, String)>,
    /// CSV rows: header, then records
    pub table: Option<(Vec<String>, Vec<Vec<String>>)>,
}

impl Report {
    fn new(command: &str, data: Value) -> Report {
        Report { command: command.into(), ok: true, data, summary: Vec::new(), table: None }
    }

    fn line(mut self, key: &str, value: impl ToString) -> Report {
        self.summary.push((key.into(), value.to_string()));
        self
    }
}

fn to_value<T: Serialize>(v: &T) -> Result<Value> {
    Ok(serde_json::to_value(v)?)
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T> {
    let text = std::fs::read_to_string(path)?;
    serde_json::from_str(&text).map_err(|e| Error::Invalid(format!("{}: {e}", path.display())))
}

fn rational(x: f64) -> Result<Rational64> {
    Rational64::approximate_float(x).ok_or_else(|| Error::Invalid(format!("eps = {x} is not a usable rational")))
}

fn big(x: &BigRational) -> String {
    x.to_string()
}

fn norm_json(n: &NormValue) -> Value {
    json!({ "value": n.value, "r": n.r, "s": n.s, "k": n.k })
}

struct Ctx<'a> {
    g: &'a Global,
    audit: AuditConstants,
    rng: ChaCha8Rng,
}

impl Ctx<'_> {
    fn p(&self, default: u64) -> Result<Arc<FieldCtx>> {
        FieldCtx::new(self.g.p.unwrap_or(default))
    }

    fn signal(&mut self, input: &Option<PathBuf>, default_p: u64) -> Result<Signal> {
        match input {
            Some(path) => Signal::from_json(&read_json::<SignalJson>(path)?),
            None => Ok(Signal::random_bounded(&self.p(default_p)?, &mut self.rng)),
        }
    }

    fn psi(&mut self, input: &Option<PathBuf>, default_p: u64) -> Result<QMSystem> {
        match input {
            Some(path) => QMSystem::from_json(&read_json::<QMSystemJson>(path)?),
            None => {
                let ctx = self.p(default_p)?;
                let p = ctx.p;
                let dims: Vec<(u64, u64)> =
                    (0..self.g.d.unwrap_or(1)).map(|_| (self.rng.gen_range(1..p), self.rng.gen_range(0..p - 1))).collect();
                Ok(QMSystem::new(&ctx, &dims))
            }
        }
    }

    fn trig(&mut self, input: &Option<PathBuf>, d: usize) -> Result<TrigPoly> {
        match input {
            Some(path) => TrigPoly::from_json(&read_json::<TrigPolyJson>(path)?),
            None => Ok(TrigPoly::random(&mut self.rng, d, 4, 1, 1.5)),
        }
    }
}

pub fn run(cli: &Cli) -> Result<Report> {
    let g = &cli.global;
    let audit = match &g.audit {
        Some(path) => AuditConstants::from_json_file(path)?,
        None => AuditConstants::default(),
    };
    let mut cx = Ctx { g, audit, rng: ChaCha8Rng::seed_from_u64(g.seed) };
    match &cli.command {
        Command::Norms { input } => {
            let f = cx.signal(input, 13)?;
            let rows = [
                ("u2+", norm_u2_plus(&f)),
                ("u2x", norm_u2_times(&f)),
                ("u3+", norm_u3_plus(&f)),
                ("QM", norm_qm(&f)),
            ];
            let mut data = serde_json::Map::new();
            let mut rep = Report::new("norms", Value::Null).line("p", f.p());
            for (name, n) in &rows {
                data.insert(name.to_string(), norm_json(n));
                rep = rep.line(name, format!("{:.12} at (r, s, k) = ({}, {}, {})", n.value, n.r, n.s, n.k));
            }
            data.insert("l1".into(), json!(f.l1()));
            data.insert("l2".into(), json!(f.l2()));
            data.insert("l4".into(), json!(f.l4()));
            data.insert("linf".into(), json!(f.linf()));
            rep.data = json!({ "p": f.p(), "norms": data });
            rep.table = Some((
                vec!["norm".into(), "value".into(), "r".into(), "s".into(), "k".into()],
                rows.iter().map(|(name, n)| vec![name.to_string(), n.value.to_string(), n.r.to_string(), n.s.to_string(), n.k.to_string()]).collect(),
            ));
            Ok(rep.line("l1 / l2 / linf", format!("{:.6} / {:.6} / {:.6}", f.l1(), f.l2(), f.linf())))
        }
        Command::Transform { input } => {
            let f = cx.signal(input, 13)?;
            let (a, m) = (add_transform(&f), mult_spectrum(&f));
            let mut rep = Report::new("transform", json!({ "additive": a.to_json(), "multiplicative": m.to_json() }))
                .line("p", f.p())
                .line("max |f^(r)|", format!("{:.12}", a.coeffs.iter().map(|z| z.norm()).fold(0.0, f64::max)));
            let rows = (0..a.coeffs.len())
                .map(|i| {
                    let mc = m.coeffs.get(i).map_or((String::new(), String::new()), |z| (z.re.to_string(), z.im.to_string()));
                    vec![i.to_string(), a.coeffs[i].re.to_string(), a.coeffs[i].im.to_string(), mc.0, mc.1]
                })
                .collect();
            rep.table = Some((vec!["index".into(), "add_re".into(), "add_im".into(), "mult_re".into(), "mult_im".into()], rows));
            Ok(rep)
        }
        Command::Count { example } => {
            let ctx = cx.p(17)?;
            let fs: Vec<Signal> = match example {
                Some(Example::Sec2) => quadratic_multiplicative_example(&ctx).to_vec(),
                None => (0..4).map(|_| Signal::random_bounded(&ctx, &mut cx.rng)).collect(),
            };
            let t = t_op(&fs[0], &fs[1], &fs[2], &fs[3])?;
            let mut rep = Report::new("count", json!({ "p": ctx.p, "T": [t.re, t.im] })).line("p", ctx.p).line("T", format!("{:.15} {:+.3e}i", t.re, t.im));
            if example.is_some() {
                let want = quadratic_multiplicative_value(ctx.p);
                rep.ok = (t - want).norm() <= 1e-9;
                rep.data["expected"] = json!(want);
                rep = rep.line("((p-1)^2+1)/p^2", format!("{want:.15}"));
            }
            Ok(rep)
        }
        Command::Census { coloring } => {
            let ctx = cx.p(7)?;
            let colors: Vec<Option<usize>> = read_json(coloring)?;
            let r = g.r.unwrap_or_else(|| colors.iter().flatten().max().map_or(1, |m| m + 1));
            let c = Coloring::partial(r, colors)?;
            let report = if c.is_total() { census_quadruples(&ctx, &c)? } else { census_quadruples_partial(&ctx, &c)? };
            let mut rep = Report::new("census", to_value(&report)?).line("p", ctx.p).line("total", report.total);
            for (i, n) in report.per_color.iter().enumerate() {
                rep = rep.line(&format!("colour {i}"), n);
            }
            rep.table = Some((
                vec!["color".into(), "count".into()],
                report.per_color.iter().enumerate().map(|(i, n)| vec![i.to_string(), n.to_string()]).collect(),
            ));
            Ok(rep)
        }
        Command::Scan { random } => {
            let p = g.p.unwrap_or(7);
            let mode = random.map_or(ScanMode::Exhaustive, ScanMode::Random);
            let s = fp_coloring_scan(p, g.r.unwrap_or(2), mode, &mut cx.rng)?;
            let mut rep = Report::new("scan", to_value(&s)?)
                .line("p", p)
                .line("colourings", s.scanned)
                .line("min", s.min)
                .line("mean", format!("{:.6}", s.mean));
            rep.ok = s.min >= 1;
            Ok(rep)
        }
        Command::Bohr { psi } => {
            let psi = cx.psi(psi, 101)?;
            let eps = rational(g.eps.unwrap_or(0.25))?;
            let bohr = check_bohr_density(&psi, eps, 0)?;
            let h = HGroup::of(&psi);
            let boxed = box_measure(&h, eps);
            let floor = eps.pow(3 * psi.d() as i32);
            let mut rep = Report::new(
                "bohr",
                json!({
                    "psi": psi.to_json(), "eps": eps.to_string(), "density": bohr.density.to_string(),
                    "density_floor": bohr.floor.to_string(), "box_measure": boxed.to_string(),
                    "box_floor": floor.to_string(), "h_order": h.order(),
                }),
            )
            .line("p", psi.p())
            .line("mu(B)", format!("{} >= {}", bohr.density, bohr.floor))
            .line("mu_H(X)", format!("{boxed} >= {floor}"));
            rep.ok = boxed >= floor;
            Ok(rep)
        }
        Command::Equidist { psi, trig } => {
            let psi = cx.psi(psi, 7)?;
            let f = cx.trig(trig, psi.d())?;
            let b = baby_count(&psi, &f);
            let mut rep = Report::new("equidist", to_value(&b)?)
                .line("p", psi.p())
                .line("E_x F(Psi(x))", format!("{:.12}", b.lhs))
                .line("lattice sum", format!("{:.12}", b.rhs_lattice))
                .line("margin", format!("{:.3e}", b.margin));
            if let Some(e) = b.rhs_enum {
                rep.ok = (e - b.rhs_lattice).norm() <= 1e-9;
                rep = rep.line("H average", format!("{e:.12}"));
            }
            Ok(rep)
        }
        Command::Countlemma { psi, trig } => {
            let psi = cx.psi(psi, 31)?;
            let f = cx.trig(trig, psi.d())?;
            let eps = rational(g.eps.unwrap_or(0.3))?;
            let s = psi.bohr_set(eps);
            let r = counting_lemma_check(&psi, &f, &s, eps)?;
            let budget = r.budget(cx.audit.counting_c);
            let mut rep = Report::new("countlemma", json!({ "report": to_value(&r)?, "budget": to_value(&budget)? }))
                .line("p", psi.p())
                .line("|T - mu(S) I(F)|", format!("{:.6e}", r.margin))
                .line("budget", format!("{:.6e}", budget.rhs));
            rep.ok = budget.holds(0.0);
            Ok(rep)
        }
        Command::Decompose { input, strict } => {
            let f = match input {
                Some(_) => cx.signal(input, 61)?,
                None => Signal::random_unit_l2(&cx.p(61)?, &mut cx.rng),
            };
            let eps = g.eps.unwrap_or(0.6);
            let dec = if *strict { quad_decompose(&f, eps)? } else { quad_decompose_unchecked(&f, eps)? };
            let conclusions = dec.conclusions();
            let estimates = dec.proof_inequalities();
            let mut rep = Report::new(
                "decompose",
                json!({ "decomposition": to_value(&dec.to_json())?, "conclusions": to_value(&conclusions)?, "estimates": to_value(&estimates)? }),
            )
            .line("p", f.p())
            .line("lemma range eps >= 4 p^(-1/8)", eps >= 4.0 * (f.p() as f64).powf(-0.125));
            for m in conclusions.iter().chain(&estimates) {
                rep = rep.line(&m.name, format!("{:.6} <= {:.6}", m.lhs, m.rhs));
            }
            rep.ok = conclusions.iter().chain(&estimates).all(|m| m.holds(1e-12));
            rep.table = Some((
                vec!["r".into(), "s".into(), "re".into(), "im".into()],
                dec.terms.iter().map(|t| vec![t.r.to_string(), t.s.to_string(), t.lambda.re.to_string(), t.lambda.im.to_string()]).collect(),
            ));
            Ok(rep)
        }
        Command::Kvn { input, resolution } => {
            let (fs, psi0, delta, r) = if input.is_empty() {
                kvn_fixture()
            } else {
                let fs = input.iter().map(|p| Signal::from_json(&read_json::<SignalJson>(p)?)).collect::<Result<Vec<_>>>()?;
                let psi0 = QMSystem::empty(&fs[0].ctx);
                (fs, psi0, g.eps.unwrap_or(0.3), *resolution)
            };
            let (_, k) = kvn_energy_increment(&fs, &psi0, delta, r, &cx.audit)?;
            Ok(Report::new("kvn", to_value(&k)?)
                .line("iterations", format!("{} (budget {})", k.iterations, k.budget))
                .line("final energy", format!("{:.6}", k.energies.last().copied().unwrap_or(0.0)))
                .line("residual QM norms", format!("{:?}", k.residual_qm)))
        }
        Command::Ramsey { coloring, oracle } => match coloring {
            Some(path) => {
                let c = PairColoring::from_json(&read_json::<PairColoringJson>(path)?)?;
                let mode = if *oracle { RichMode::Oracle } else { RichMode::Constructive };
                let rc = find_rich_color(&c, mode)?;
                Ok(Report::new(
                    "ramsey",
                    json!({ "color": rc.color, "lambda": big(&rc.lambda), "bound": big(&rc.bound), "trail": rc.trail }),
                )
                .line("colour", rc.color)
                .line("Lambda", big(&rc.lambda))
                .line("eps_r^2", big(&rc.bound)))
            }
            None => {
                let r = g.r.unwrap_or(2);
                let ext = extremal_coloring(r)?;
                let lambdas: Vec<String> = ext.lambdas.iter().map(big).collect();
                Ok(Report::new("ramsey", json!({ "r": r, "coloring": ext.coloring.to_json(), "lambdas": lambdas }))
                    .line("r", r)
                    .line("Lambda per class", lambdas.join(", ")))
            }
        },
        Command::Drc { n } => {
            let eta = BigRational::new(BigInt::from(1), BigInt::from(4));
            let eta = match g.eps {
                Some(e) => {
                    let q = rational(e)?;
                    BigRational::new(BigInt::from(*q.numer()), BigInt::from(*q.denom()))
                }
                None => eta,
            };
            let a: Vec<Vec<bool>> = loop {
                let a: Vec<Vec<bool>> = (0..*n).map(|_| (0..*n).map(|_| cx.rng.gen_bool(0.5)).collect()).collect();
                if a.iter().flatten().any(|&b| b) {
                    break a;
                }
            };
            let w = vec![1u64; *n];
            let d = dependent_random_choice(&w, &w, &a, &eta)?;
            Ok(Report::new(
                "drc",
                json!({
                    "x_prime": d.x_prime, "y_star": d.y_star, "alpha": big(&d.alpha), "measure": big(&d.measure),
                    "e_measure": big(&d.e_measure), "defect": big(&d.defect),
                }),
            )
            .line("alpha", big(&d.alpha))
            .line("mu(X')", big(&d.measure))
            .line("mu(E in X'^2)", big(&d.e_measure)))
        }
        Command::Charsum { count } => {
            let ctx = cx.p(101)?;
            let rows = mixed_sum_sweep(&ctx, *count, cx.audit.mixed_sum_c, &mut cx.rng)?;
            let gauss = gauss_sum(&ctx, 1, 0)?;
            let worst = rows.iter().map(|r| r.magnitude).fold(0.0, f64::max);
            let mut rep = Report::new("charsum", json!({ "p": ctx.p, "gauss": [gauss.re, gauss.im], "sweep": to_value(&rows)? }))
                .line("p", ctx.p)
                .line("|G(1, 0)|", format!("{:.12}", gauss.norm()))
                .line("max mixed magnitude", format!("{worst:.6}"))
                .line("bound c p^{-1/16}", format!("{:.6}", rows.first().map_or(0.0, |r| r.bound)));
            rep.ok = rows.iter().all(|r| r.slack >= 0.0);
            rep.table = Some((
                ["p", "a", "b", "k", "k_prime", "h", "magnitude", "bound", "slack"].map(String::from).to_vec(),
                rows.iter()
                    .map(|r| {
                        vec![r.p, r.a, r.b, r.k, r.k_prime, r.h]
                            .into_iter()
                            .map(|v| v.to_string())
                            .chain([r.magnitude, r.bound, r.slack].map(|v| v.to_string()))
                            .collect()
                    })
                    .collect(),
            ));
            Ok(rep)
        }
        Command::Search { n, n_max, budget, distinct } => {
            let r = g.r.unwrap_or(2);
            match n {
                Some(n) => {
                    let out = interval_backtrack(*n, r, *distinct, *budget)?;
                    Ok(Report::new("search", to_value(&out)?).line("N", n).line("outcome", format!("{out:?}")))
                }
                None => {
                    let fr = interval_frontier(r, *distinct, *n_max, *budget)?;
                    let mut rep = Report::new("search", to_value(&fr)?)
                        .line("last certificate", format!("{:?}", fr.last_sat))
                        .line("first UNSAT", format!("{:?}", fr.first_unsat));
                    rep.ok = fr.first_unsat.map_or(true, |n| n <= 252);
                    Ok(rep)
                }
            }
        }
        Command::Verify => {
            let p = g.p.unwrap_or(13);
            let checks = run_suite(p, g.seed, &cx.audit)?;
            let mut rep = Report::new("verify", json!({ "p": p, "checks": to_value(&checks)? }));
            rep.ok = checks.iter().all(|c| c.passed);
            for c in &checks {
                rep = rep.line(&format!("{}: {}", c.module, c.name), format!("{} ({})", if c.passed { "pass" } else { "FAIL" }, c.detail));
            }
            rep.table = Some((
                ["module", "check", "passed", "detail"].map(String::from).to_vec(),
                checks.iter().map(|c| vec![c.module.clone(), c.name.clone(), c.passed.to_string(), c.detail.clone()]).collect(),
            ));
            Ok(rep)
        }
    }
}

/// The full report document, as written by `--format json`.
pub fn report_json(g: &Global, rep: &Report) -> Value {
    json!({
        "schema": SCHEMA,
        "command": rep.command,
        "params": { "p": g.p, "r": g.r, "d": g.d, "eps": g.eps, "seed": g.seed },
        "ok": rep.ok,
        "data": rep.data,
    })
}

pub fn render(g: &Global, rep: &Report) -> Result<Vec<u8>> {
    match g.format {
        Format::Json => Ok((serde_json::to_string_pretty(&report_json(g, rep))? + "\n").into_bytes()),
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            match &rep.table {
                Some((head, rows)) => {
                    w.write_record(head)?;
                    for row in rows {
                        w.write_record(row)?;
                    }
                }
                None => {
                    w.write_record(["key", "value"])?;
                    for (k, v) in &rep.summary {
                        w.write_record([k, v])?;
                    }
                }
            }
            w.into_inner().map_err(|e| Error::Invalid(e.to_string()))
        }
    }
}

fn summary_table(rep: &Report) -> String {
    let width = rep.summary.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
    let mut s = format!("{} [{}]\n", rep.command, if rep.ok { "ok" } else { "FAILED" });
    for (k, v) in &rep.summary {
        s += &format!("  {k:<width$}  {v}\n");
    }
    s
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::BoundViolated(_) | Error::Budget(_) => 1,
        _ => 2,
    }
}

pub fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.global.threads {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    let rep = match run(&cli) {
        Ok(rep) => rep,
        Err(e) => {
            eprintln!("monoquad: {e}");
            return ExitCode::from(exit_code(&e));
        }
    };
    let bytes = match render(&cli.global, &rep) {
        Ok(b) => b,
        Err(e) => {
            eprintln!("monoquad: {e}");
            return ExitCode::from(2);
        }
    };
    let written = match &cli.global.out {
        Some(path) => std::fs::write(path, &bytes),
        None => std::io::stdout().write_all(&bytes),
    };
    if let Err(e) = written {
        eprintln!("monoquad: {e}");
        return ExitCode::from(2);
    }
    eprint!("{}", summary_table(&rep));
    if rep.ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

use std::fmt::Write as _;

use taut_core::charpoly::{fmt_rational, parse_rational};
use taut_core::expr::eval_str;
use taut_core::polyoracle::{self, Syzygy};
use taut_core::regression::run_all;
use taut_core::schubert::{self, StripKind};
use taut_core::staircase::{self, BivariateIdeal};
use taut_core::surface::CharacterConfig;
use taut_core::{CharacterPolynomial, Engine, Rational, TautError};

use crate::error::CliError;
use crate::{Cli, Command, Format};

pub struct Output {
    pub text: String,
    pub code: u8,
}

/// Lines for both output styles.
struct Lines {
    kv: bool,
    text: String,
}

impl Lines {
    fn new(format: Format) -> Self {
        Lines { kv: format == Format::Kv, text: String::new() }
    }

    fn line(&mut self, s: impl AsRef<str>) {
        self.text.push_str(s.as_ref());
        self.text.push('\n');
    }

    /// `name = value` in kv mode, `pretty` otherwise.
    fn pair(&mut self, name: &str, value: impl std::fmt::Display, pretty: impl AsRef<str>) {
        if self.kv {
            self.line(format!("{name} = {value}"));
        } else {
            self.line(pretty);
        }
    }

    fn done(self) -> Output {
        Output { text: self.text, code: 0 }
    }
}

fn rational(s: &str) -> Result<Rational, CliError> {
    parse_rational(s.trim()).map_err(|e| CliError::Usage(format!("bad rational `{s}`: {e}")))
}

fn chars(cli: &Cli) -> Result<Option<CharacterConfig>, CliError> {
    let Some(path) = &cli.chars else { return Ok(None) };
    let text = std::fs::read_to_string(path)
        .map_err(|source| CliError::Io { path: path.display().to_string(), source })?;
    Ok(Some(CharacterConfig::parse(&text)?))
}

fn specialize(cfg: &Option<CharacterConfig>, p: &CharacterPolynomial) -> CharacterPolynomial {
    cfg.as_ref().map_or_else(|| p.clone(), |c| c.apply(p))
}

fn aligned(rows: &[Vec<String>]) -> Vec<String> {
    let width = rows.iter().flatten().map(String::len).max().unwrap_or(0);
    rows.iter()
        .map(|r| r.iter().map(|c| format!("{c:>width$}")).collect::<Vec<_>>().join(" "))
        .collect()
}

pub fn run(cli: &Cli) -> Result<Output, CliError> {
    let mut out = Lines::new(cli.format);
    let engine = Engine::default();
    match &cli.command {
        Command::Alpha { m } => {
            let a = staircase::alpha(*m)?;
            let printed = staircase::alpha_printed_closed_form(*m);
            let note = if printed == a { String::new() } else { format!(" (printed closed form gives {printed})") };
            out.pair("alpha", a, format!("{a}{note}"));
        }
        Command::Beta { m, eta } => {
            let b = match eta {
                Some(e) => staircase::beta_at(*m, &rational(e)?)?,
                None => staircase::beta(*m)?,
            };
            if out.kv {
                for (j, v) in b.iter().enumerate() {
                    out.line(format!("beta {m} {} {v}", j + 1));
                }
            } else {
                let row: Vec<String> = b.iter().map(u64::to_string).collect();
                out.line(row.join(" "));
            }
        }
        Command::Colength { m, j, eta } => {
            let n = match j {
                None => staircase::j_m(*m)?.colength()?,
                Some(j) => {
                    let eta = rational(eta.as_deref().unwrap_or("1"))?;
                    staircase::colength(&BivariateIdeal::with_binomial(*m, *j, eta)?)?
                }
            };
            out.pair("colength", n, n.to_string());
        }
        Command::VdmCheck { m } => vdm_check(&mut out, *m)?,
        Command::OrdTable { m, seed } => {
            let t = polyoracle::ord_table(*m, *seed)?;
            if out.kv {
                for (j, row) in t.ord.iter().enumerate() {
                    for (k, v) in row.iter().enumerate() {
                        out.line(format!("ord {m} {} {k} {v}", j + 1));
                    }
                }
            } else {
                let mut rows = vec![std::iter::once("j\\k".to_string()).chain((0..=*m).map(|k| k.to_string())).collect()];
                for (j, row) in t.ord.iter().enumerate() {
                    rows.push(std::iter::once(format!("G{}", j + 1)).chain(row.iter().map(u32::to_string)).collect());
                }
                out.line("valuations:");
                aligned(&rows).into_iter().for_each(|r| out.line(r));
                let mut quad = vec![rows[0].clone()];
                for j in 1..=*m {
                    quad.push(
                        std::iter::once(format!("G{j}"))
                            .chain((0..=*m).map(|k| t.printed_quadratic(j, k).to_string()))
                            .collect(),
                    );
                }
                out.line("printed quadratic (k-j)^2+(k-j):");
                aligned(&quad).into_iter().for_each(|r| out.line(r));
            }
        }
        Command::Eta { m } => {
            for i in 1..=*m {
                for j in 1..=*m {
                    let v = polyoracle::eta_valuation(*m, i, j)?;
                    if out.kv {
                        out.line(format!("eta {m} {i} {j} {v}"));
                    } else {
                        out.line(format!(
                            "({i},{j}): {v}  iterated {}  printed {}",
                            polyoracle::eta_exponent_iterated(*m, i, j),
                            polyoracle::eta_exponent_printed(*m, i, j)
                        ));
                    }
                }
            }
        }
        Command::Normalize { m, expr } => {
            let e = eval_str(expr, &engine, *m)?;
            out.pair("normal_form", &e, e.to_string());
        }
        Command::Integrate { m, expr } => {
            let cfg = chars(cli)?;
            let v = specialize(&cfg, &engine.integrate(&eval_str(expr, &engine, *m)?)?);
            out.pair("integral", &v, v.to_string());
        }
        Command::Chern { m, class } => {
            let c = taut_core::expr::class_by_name(class);
            for (k, piece) in engine.chern_taut(&c, *m)?.iter().enumerate() {
                out.pair(&format!("c{k}"), piece, format!("c{k} = {piece}"));
            }
        }
        Command::Schubert { bounds, factors } => {
            let v = schubert_cmd(bounds, factors)?;
            out.pair("integral", fmt_rational(&v), fmt_rational(&v));
        }
        Command::Nsec3 => nsec3(&mut out, &engine, &chars(cli)?)?,
        Command::VerifyPaper => return Ok(verify(out, &engine)),
    }
    Ok(out.done())
}

fn vdm_check(out: &mut Lines, m: usize) -> Result<(), CliError> {
    let sign = |s: i8| if s < 0 { "-" } else { "+" };
    let verdict = |h: bool| if h { "OK" } else { "FAIL" };
    for i in 1..m {
        let r = polyoracle::check_chain(m, i)?;
        out.line(format!("chain {m} {i} {} {}", sign(r.sign), verdict(r.holds)));
    }
    for (name, kind) in [("syzygy", Syzygy::Down), ("syzygy-up", Syzygy::UpMirror)] {
        for i in kind.i_range(m) {
            for j in 1..m {
                let r = polyoracle::check_syzygy(kind, m, i, j)?;
                out.line(format!("{name} {m} {i} {j} {} {}", sign(r.sign), verdict(r.holds)));
            }
        }
    }
    Ok(())
}

fn schubert_cmd(bounds: &str, factors: &str) -> Result<Rational, CliError> {
    let dims: Vec<u32> = bounds
        .split(',')
        .map(|s| s.trim().parse().map_err(|_| CliError::Usage(format!("bad box `{bounds}`, expected A,B"))))
        .collect::<Result<_, _>>()?;
    let [a, b] = dims[..] else {
        return Err(CliError::Usage(format!("bad box `{bounds}`, expected A,B")));
    };
    let fs = factors
        .split(',')
        .map(|f| {
            let f = f.trim();
            let kind = match f.chars().next() {
                Some('r') => StripKind::Row,
                Some('c') => StripKind::Column,
                _ => return Err(CliError::Usage(format!("bad factor `{f}`, expected rN or cN"))),
            };
            let n = f[1..].parse().map_err(|_| CliError::Usage(format!("bad factor `{f}`")))?;
            Ok((kind, n))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(schubert::grassmann_integral((a, b), &fs)?)
}

fn nsec3(out: &mut Lines, engine: &Engine, cfg: &Option<CharacterConfig>) -> Result<(), CliError> {
    let r = schubert::nsec3(engine)?;
    for t in &r.terms {
        let j: Vec<String> = t.j.iter().map(u32::to_string).collect();
        let v = specialize(cfg, &t.value());
        out.pair(&format!("term_{}", j.join("_")), &v, format!("({}): G = {}, W = {v}", j.join(","), t.grassmann));
    }
    let total = specialize(cfg, &r.total);
    out.pair("total", &total, format!("3! N_3 = {total}"));
    if cfg.as_ref().is_some_and(CharacterConfig::is_fully_numeric) {
        let n = specialize(cfg, &r.n());
        let n = n.as_constant().ok_or_else(|| TautError::Config(format!("N_3 = {n} is not numeric")))?;
        out.pair("N3", fmt_rational(&n), format!("N_3 = {}", fmt_rational(&n)));
    }
    Ok(())
}

fn verify(mut out: Lines, engine: &Engine) -> Output {
    let checks = run_all(engine);
    let failed = checks.iter().filter(|c| !c.pass).count();
    if out.kv {
        for c in &checks {
            out.line(format!("criterion_{} = {}", c.id, c.status()));
        }
    } else {
        for c in &checks {
            let mut row = format!("{:>2}  {}  {:<26} {:>10.2?}", c.id, c.status(), c.title, c.elapsed);
            if let Some(b) = c.budget {
                let _ = write!(row, "  (budget {b:?})");
            }
            out.line(row);
            for n in c.notes.iter().filter(|n| !c.pass && (n.starts_with("MISMATCH") || n.starts_with("ERROR"))) {
                out.line(format!("      {n}"));
            }
        }
        out.line(format!("{} of {} checks pass", checks.len() - failed, checks.len()));
    }
    Output { text: out.text, code: if failed > 0 { 3 } else { 0 } }
}

use std::fs;
use std::path::{Path, PathBuf};

use seqlab::decomp::{
    gap_table, lambda_sequence, star_check, star_orlicz_certificate, star_summable_certificate, ASequence,
};
use seqlab::norms::{engine_from_id, orlicz_from_id, NormEngine};
use seqlab::output::{to_json, write_output, Format, RunRecord};
use seqlab::seqvec::parse_vector;
use seqlab::{Error, Result, SparseVec};
use serde::Serialize;

use super::{reproduce, CertSource, Cli, Command, GapArgs, LambdaArgs, StarArgs, Target};

/// Where tables go: files under `--out`, or stdout.
pub(super) struct Sink {
    pub out: Option<PathBuf>,
    pub format: Format,
}

impl Sink {
    /// Emits one table in the chosen format and returns the file names written.
    pub fn table(
        &self,
        stem: &str,
        csv: impl FnOnce() -> Result<Vec<u8>>,
        json: impl FnOnce() -> Vec<u8>,
    ) -> Result<Vec<String>> {
        let (ext, body) = match self.format {
            Format::Csv => ("csv", csv()?),
            Format::Json => ("json", json()),
        };
        match &self.out {
            Some(dir) => {
                let name = format!("{stem}.{ext}");
                write_output(dir, &name, &body)?;
                Ok(vec![name])
            }
            None => {
                use std::io::Write;
                std::io::stdout().write_all(&body)?;
                Ok(vec![])
            }
        }
    }

    /// Side files (plot data, block files) are only written under `--out`.
    pub fn extra(&self, name: &str, body: &[u8]) -> Result<Vec<String>> {
        match &self.out {
            Some(dir) => {
                write_output(dir, name, body)?;
                Ok(vec![name.to_string()])
            }
            None => Ok(vec![]),
        }
    }

    /// Summaries go to stdout when tables are in files, stderr otherwise.
    pub fn say(&self, text: &str) {
        if self.out.is_some() {
            print!("{text}");
        } else {
            eprint!("{text}");
        }
    }

    pub fn record(&self, record: &RunRecord) -> Result<()> {
        if let Some(dir) = &self.out {
            fs::create_dir_all(dir)?;
            record.write(dir)?;
        }
        Ok(())
    }
}

pub fn run(cli: Cli) -> Result<bool> {
    let sink = Sink { out: cli.out, format: cli.format };
    match cli.command {
        Command::Norm(t) => cmd_norm(&sink, t),
        Command::Gap(g) => cmd_gap(&sink, g),
        Command::Star(s) => cmd_star(&sink, s),
        Command::Reproduce(r) => reproduce::cmd_reproduce(&sink, r),
        Command::Lambda(l) => cmd_lambda(&sink, l),
    }
}

pub(super) fn read_input(path: &Path, record: &mut RunRecord) -> Result<String> {
    let bytes = fs::read(path).map_err(|e| Error::Io(format!("cannot read `{}`: {e}", path.display())))?;
    record.hash_input(&bytes);
    String::from_utf8(bytes).map_err(|_| Error::Io(format!("`{}` is not UTF-8", path.display())))
}

/// Reads a vector file; parse errors name the file.
fn read_vector(path: &Path, record: &mut RunRecord) -> Result<SparseVec> {
    let text = read_input(path, record)?;
    parse_vector(&text).map_err(|e| match e {
        Error::Parse { line, message } => Error::Parse { line, message: format!("{}: {message}", path.display()) },
        other => other,
    })
}

fn resolve(t: Target, record: &mut RunRecord) -> Result<(Box<dyn NormEngine>, SparseVec)> {
    let id = t.engine.or(t.engine_pos).ok_or_else(|| Error::UnknownEngine("(none given)".into()))?;
    let engine = engine_from_id(&id)?;
    record.engine = Some(id.clone());
    record.param("engine", &id);
    let path =
        t.vector.or(t.vector_pos).ok_or_else(|| Error::Io("no vector file given (positional or --vector)".into()))?;
    record.param("vector", path.display());
    let x = read_vector(&path, record)?;
    Ok((engine, x))
}

/// Twelve decimals; integers print bare.
pub(super) fn fmt_value(v: f64) -> String {
    if v.fract() == 0.0 && v.abs() < 1e15 {
        format!("{v:.0}")
    } else {
        format!("{v:.12}")
    }
}

fn cmd_norm(sink: &Sink, t: Target) -> Result<bool> {
    let mut record = RunRecord::new("norm");
    let (engine, x) = resolve(t, &mut record)?;
    let value = fmt_value(engine.eval(&x));
    println!("{value}");
    record.summary = value;
    sink.record(&record)?;
    Ok(true)
}

fn cmd_gap(sink: &Sink, g: GapArgs) -> Result<bool> {
    let mut record = RunRecord::new("gap");
    let (engine, x) = resolve(g.target, &mut record)?;
    let a = load_sequence(&g.a, &mut record)?;
    let n_max = g.n_max.unwrap_or(x.len().max(1));
    record.param("a", a.id()).param("n_max", n_max).param("mode", format!("{:?}", g.mode).to_lowercase());
    let table = gap_table(engine.as_ref(), &x, &a.window(n_max)?, n_max, g.mode)?;
    let mut outputs = sink.table(
        "gap",
        || {
            let mut buf = Vec::new();
            table.write_csv(&mut buf)?;
            Ok(buf)
        },
        || to_json(&table),
    )?;
    outputs.extend(sink.extra("gap.dat", table.gnuplot().as_bytes())?);
    let summary = match table.min_ratio() {
        Some(r) => format!(
            "gap: {} over n <= {n_max}: min ratio {} at n = {}, final gap {}\n",
            table.engine,
            r.ratio,
            r.n,
            table.rows.last().map_or(0.0, |r| r.gap)
        ),
        None => "gap: empty window\n".into(),
    };
    sink.say(&summary);
    record.outputs = outputs;
    record.summary = summary.trim_end().into();
    sink.record(&record)?;
    Ok(true)
}

pub(super) fn load_sequence(id: &str, record: &mut RunRecord) -> Result<ASequence> {
    let a = ASequence::from_id(id)?;
    if matches!(a, ASequence::Values { .. }) {
        record.hash_input(&fs::read(id)?);
    }
    Ok(a)
}

fn cmd_star(sink: &Sink, s: StarArgs) -> Result<bool> {
    let mut record = RunRecord::new("star");
    let (engine, x) = resolve(s.target, &mut record)?;
    let name = engine.name();
    let orlicz_id = name.strip_prefix("orlicz:");
    let source = match s.cert {
        CertSource::Auto if orlicz_id.is_some() && s.functional.is_none() => CertSource::Orlicz,
        CertSource::Auto => CertSource::Summable,
        other => other,
    };
    let constants = match source {
        CertSource::Orlicz => {
            let id = orlicz_id.ok_or_else(|| Error::FlagsUnmet {
                engine: name.clone(),
                required: "a Luxemburg norm for the Orlicz certificate".into(),
            })?;
            star_orlicz_certificate(&orlicz_from_id(id)?, &x)?
        }
        _ => {
            let f = match &s.functional {
                Some(path) => {
                    record.param("functional", path.display());
                    read_vector(path, &mut record)?
                }
                None if name == "c0" => attaining_coordinate(&x)?,
                None => {
                    return Err(Error::FlagsUnmet {
                        engine: name,
                        required: "--functional for a summable certificate (automatic only for c0)".into(),
                    })
                }
            };
            star_summable_certificate(engine.as_ref(), &f, &x)?
        }
    };
    let c_x = constants.c_x * s.c_scale;
    record
        .param("cert", format!("{source:?}").to_lowercase())
        .param("c_scale", s.c_scale)
        .param("c_x", c_x)
        .param("d_x", constants.d_x)
        .param("modulus", constants.modulus.id());
    let cert = star_check(engine.as_ref(), &x, c_x, constants.d_x, &constants.modulus)?;
    let outputs = sink.table(
        "star",
        || {
            let mut buf = Vec::new();
            cert.write_csv(&mut buf)?;
            Ok(buf)
        },
        || to_json(&cert),
    )?;
    let valid = cert.is_valid();
    let mut summary = format!(
        "star: {name}: {} ({} subsets, c(x) = {c_x}, d(x) = {}, ω = {})\n",
        if valid { "PASS" } else { "FAIL" },
        cert.margins.len(),
        constants.d_x,
        constants.modulus.id()
    );
    if let Some(m) = cert.min_margin() {
        let set = m.subset.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(",");
        summary.push_str(&format!("  min margin {} at A = {{{set}}}\n", m.margin));
    }
    sink.say(&summary);
    record.outputs = outputs;
    record.passed = valid;
    record.summary = summary.trim_end().into();
    sink.record(&record)?;
    Ok(valid)
}

/// `sign(x(γ)) e*_γ` at the first coordinate of largest modulus.
fn attaining_coordinate(x: &SparseVec) -> Result<SparseVec> {
    let top = x.greedy_order().first().copied().ok_or_else(|| Error::Precondition("x must be nonzero".into()))?;
    SparseVec::from_pairs([(top, x.get(top).signum())])
}

#[derive(Serialize)]
struct LambdaTable<'a> {
    engine: String,
    lambda: &'a [f64],
}

fn cmd_lambda(sink: &Sink, l: LambdaArgs) -> Result<bool> {
    let mut record = RunRecord::new("lambda");
    let id = l.engine.or(l.engine_pos).ok_or_else(|| Error::UnknownEngine("(none given)".into()))?;
    let engine = engine_from_id(&id)?;
    record.engine = Some(id.clone());
    record.param("engine", &id).param("n_max", l.n_max);
    let lambda = lambda_sequence(engine.as_ref(), l.n_max)?;
    let outputs = {
        let mut o = sink.table(
            "lambda",
            || {
                let mut w = csv::Writer::from_writer(Vec::new());
                w.write_record(["n", "lambda"]).map_err(|e| Error::Io(e.to_string()))?;
                for (i, v) in lambda.iter().enumerate() {
                    w.write_record([(i + 1).to_string(), v.to_string()]).map_err(|e| Error::Io(e.to_string()))?;
                }
                w.into_inner().map_err(|e| Error::Io(e.to_string()))
            },
            || to_json(&LambdaTable { engine: engine.name(), lambda: &lambda }),
        )?;
        let mut dat = format!("# {} lambda_n\n# n lambda\n", engine.name());
        for (i, v) in lambda.iter().enumerate() {
            dat.push_str(&format!("{} {v}\n", i + 1));
        }
        o.extend(sink.extra("lambda.dat", dat.as_bytes())?);
        o
    };
    let strict = lambda.windows(2).all(|w| w[1] > w[0]);
    let monotone = lambda.windows(2).all(|w| w[1] >= w[0]);
    let shape = if strict {
        "strictly increasing"
    } else if monotone && lambda.first() == lambda.last() {
        "constant"
    } else if monotone {
        "non-decreasing"
    } else {
        "not monotone"
    };
    let summary = format!(
        "lambda: {}: λ_{} = {}, {shape}\n",
        engine.name(),
        lambda.len(),
        lambda.last().map_or("-".into(), |v| fmt_value(*v))
    );
    sink.say(&summary);
    record.outputs = outputs;
    record.summary = summary.trim_end().into();
    sink.record(&record)?;
    Ok(true)
}

use seqlab::norms::{exponents_from_id, orlicz_from_id};
use seqlab::output::{to_json, RunRecord};
use seqlab::witness::{
    blockweight_witness, day_bound_suite, day_witness, ex17_witness, fact16_witness, nakano_suite, prop36_suite,
    WitnessReport,
};
use seqlab::Result;

use super::commands::{load_sequence, Sink};
use super::ReproduceArgs;

pub const EXAMPLES: [&str; 6] = ["ex1.7", "ex2.3", "ex2.5", "ex2.6", "fact1.6", "prop3.6"];

pub fn cmd_reproduce(sink: &Sink, r: ReproduceArgs) -> Result<bool> {
    let mut record = RunRecord::new(format!("reproduce {}", r.example));
    record.param("example", &r.example).param("seed", r.seed);
    let mut extras: Vec<(String, Vec<u8>)> = Vec::new();
    let reports: Vec<WitnessReport> = match r.example.as_str() {
        "ex1.7" => {
            let a = load_sequence(r.a.as_deref().unwrap_or("harmonic"), &mut record)?;
            let report = ex17_witness(&a, r.n_max.unwrap_or(10_000))?;
            if let Some(t) = &report.table {
                extras.push(("ex1.7.dat".into(), t.gnuplot().into_bytes()));
            }
            vec![report]
        }
        "ex2.3" => {
            let p = exponents_from_id(r.p.as_deref().unwrap_or("linear"))?;
            vec![nakano_suite(&p, r.theta.unwrap_or(0.5), r.seed, r.count.unwrap_or(200), r.max_support.unwrap_or(12))?]
        }
        "ex2.5" => {
            let a = load_sequence(r.a.as_deref().unwrap_or("harmonic"), &mut record)?;
            let witness = day_witness(&a, r.k.unwrap_or(6), r.window)?;
            let bound = day_bound_suite(r.seed, r.count.unwrap_or(1000), r.max_support.unwrap_or(50))?;
            vec![witness, bound]
        }
        "ex2.6" => {
            let a = load_sequence(r.a.as_deref().unwrap_or("geometric8"), &mut record)?;
            let (weights, report) = blockweight_witness(&a, r.k.unwrap_or(10), r.window)?;
            extras.push(("ex2.6.blocks".into(), weights.format().into_bytes()));
            vec![report]
        }
        "fact1.6" => vec![fact16_witness(r.m_max.unwrap_or(20), r.n_max.unwrap_or(10_000))?],
        "prop3.6" => {
            let m = orlicz_from_id(r.orlicz.as_deref().unwrap_or("default"))?;
            vec![prop36_suite(&m, r.seed, r.count.unwrap_or(50), r.max_support.unwrap_or(10), r.m_max.unwrap_or(20))?]
        }
        other => unreachable!("`{other}` is rejected by the argument parser"),
    };

    let mut outputs = Vec::new();
    let mut passed = true;
    let mut summary = String::new();
    for report in &reports {
        outputs.extend(sink.table(
            &report.construction,
            || {
                let mut buf = Vec::new();
                report.write_csv(&mut buf)?;
                Ok(buf)
            },
            || to_json(report),
        )?);
        passed &= report.passed();
        summary.push_str(&report.summary());
        for (k, v) in &report.params {
            record.param(&format!("{}.{k}", report.construction), v);
        }
    }
    for (name, body) in &extras {
        outputs.extend(sink.extra(name, body)?);
    }
    sink.say(&summary);
    record.outputs = outputs;
    record.passed = passed;
    record.summary = summary.lines().filter(|l| !l.starts_with(' ')).collect::<Vec<_>>().join("; ");
    sink.record(&record)?;
    Ok(passed)
}

use std::collections::BTreeMap;
use std::fmt;
use std::io::Write;

use serde::Serialize;

use crate::decomp::GapTable;
use crate::error::{Error, Result};
use crate::seqvec::SparseVec;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Relation {
    #[serde(rename = "<=")]
    Le,
    #[serde(rename = ">=")]
    Ge,
    #[serde(rename = "==")]
    Eq,
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Relation::Le => "<=",
            Relation::Ge => ">=",
            Relation::Eq => "==",
        })
    }
}

/// One checked claim `lhs relation rhs`. `exact` rows were decided in
/// rational arithmetic; `lhs` and `rhs` are then display values only.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WitnessRow {
    /// Which input of a multi-vector suite the row belongs to.
    pub instance: Option<usize>,
    pub check: String,
    pub n: Option<usize>,
    pub k: Option<usize>,
    pub lhs: f64,
    pub relation: Relation,
    pub rhs: f64,
    pub exact: bool,
    pub holds: bool,
}

impl WitnessRow {
    /// `rhs - lhs` for `<=`, `lhs - rhs` for `>=`, `-|lhs - rhs|` for `==`.
    pub fn margin(&self) -> f64 {
        match self.relation {
            Relation::Le => self.rhs - self.lhs,
            Relation::Ge => self.lhs - self.rhs,
            Relation::Eq => -(self.lhs - self.rhs).abs(),
        }
    }
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct WitnessReport {
    pub construction: String,
    pub params: BTreeMap<String, String>,
    pub vectors: Vec<(String, SparseVec)>,
    pub rows: Vec<WitnessRow>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub table: Option<GapTable>,
}

#[derive(Serialize)]
struct CsvRow<'a> {
    construction: &'a str,
    instance: Option<usize>,
    check: &'a str,
    n: Option<usize>,
    k: Option<usize>,
    lhs: f64,
    relation: Relation,
    rhs: f64,
    margin: f64,
    exact: bool,
    holds: bool,
}

impl WitnessReport {
    pub fn new(construction: impl Into<String>) -> Self {
        Self { construction: construction.into(), ..Self::default() }
    }

    pub fn param(&mut self, key: &str, value: impl ToString) -> &mut Self {
        self.params.insert(key.to_string(), value.to_string());
        self
    }

    pub fn passed(&self) -> bool {
        self.rows.iter().all(|r| r.holds)
    }

    pub fn failures(&self) -> impl Iterator<Item = &WitnessRow> {
        self.rows.iter().filter(|r| !r.holds)
    }

    #[allow(clippy::too_many_arguments)]
    pub fn push(
        &mut self,
        check: &str,
        n: Option<usize>,
        k: Option<usize>,
        lhs: f64,
        relation: Relation,
        rhs: f64,
        slack: f64,
    ) {
        let holds = match relation {
            Relation::Le => lhs <= rhs + slack,
            Relation::Ge => lhs + slack >= rhs,
            Relation::Eq => (lhs - rhs).abs() <= slack,
        };
        self.rows.push(WitnessRow {
            instance: None,
            check: check.into(),
            n,
            k,
            lhs,
            relation,
            rhs,
            exact: false,
            holds,
        });
    }

    /// `|lhs - rhs| <= rel * |rhs|`.
    pub fn push_close(&mut self, check: &str, n: Option<usize>, k: Option<usize>, lhs: f64, rhs: f64, rel: f64) {
        self.push(check, n, k, lhs, Relation::Eq, rhs, rel * rhs.abs());
    }

    /// A row whose truth value was decided exactly by the caller.
    #[allow(clippy::too_many_arguments)]
    pub fn push_exact(
        &mut self,
        check: &str,
        n: Option<usize>,
        k: Option<usize>,
        lhs: f64,
        relation: Relation,
        rhs: f64,
        holds: bool,
    ) {
        self.rows.push(WitnessRow {
            instance: None,
            check: check.into(),
            n,
            k,
            lhs,
            relation,
            rhs,
            exact: true,
            holds,
        });
    }

    /// Appends the rows of `other` tagged with `instance`; its vectors are
    /// kept under `<name>#<instance>`.
    pub fn absorb(&mut self, other: WitnessReport, instance: usize) {
        for mut row in other.rows {
            row.instance = Some(instance);
            self.rows.push(row);
        }
        for (name, v) in other.vectors {
            self.vectors.push((format!("{name}#{instance}"), v));
        }
    }

    /// Columns `construction,instance,check,n,k,lhs,relation,rhs,margin,exact,holds`.
    pub fn write_csv<W: Write>(&self, w: W) -> Result<()> {
        let mut out = csv::Writer::from_writer(w);
        for r in &self.rows {
            out.serialize(CsvRow {
                construction: &self.construction,
                instance: r.instance,
                check: &r.check,
                n: r.n,
                k: r.k,
                lhs: r.lhs,
                relation: r.relation,
                rhs: r.rhs,
                margin: r.margin(),
                exact: r.exact,
                holds: r.holds,
            })
            .map_err(|e| Error::Io(e.to_string()))?;
        }
        out.flush()?;
        Ok(())
    }

    /// Human-readable summary: parameters, per-check counts, first failures.
    pub fn summary(&self) -> String {
        let mut s = format!("{}: {}\n", self.construction, if self.passed() { "PASS" } else { "FAIL" });
        for (k, v) in &self.params {
            s.push_str(&format!("  {k} = {v}\n"));
        }
        let mut counts: BTreeMap<&str, (usize, usize)> = BTreeMap::new();
        for r in &self.rows {
            let e = counts.entry(r.check.as_str()).or_default();
            e.0 += 1;
            if r.holds {
                e.1 += 1;
            }
        }
        for (check, (total, ok)) in counts {
            s.push_str(&format!("  {ok}/{total}  {check}\n"));
        }
        for r in self.failures().take(10) {
            s.push_str(&format!(
                "  failed: {} instance={:?} n={:?} k={:?}: {} {} {}\n",
                r.check, r.instance, r.n, r.k, r.lhs, r.relation, r.rhs
            ));
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rows_and_csv() {
        let mut r = WitnessReport::new("demo");
        r.param("K", 3);
        r.push("le", Some(1), None, 1.0, Relation::Le, 1.0, 0.0);
        r.push_close("close", None, Some(2), 1.0 + 1e-13, 1.0, 1e-12);
        r.push_exact("exact", None, None, 0.5, Relation::Ge, 0.75, false);
        assert!(!r.passed());
        assert_eq!(r.failures().count(), 1);
        assert_eq!(r.rows[2].margin(), -0.25);
        let mut buf = Vec::new();
        r.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next().unwrap(), "construction,instance,check,n,k,lhs,relation,rhs,margin,exact,holds");
        assert_eq!(lines.next().unwrap(), "demo,,le,1,,1.0,<=,1.0,0.0,false,true");

        let mut suite = WitnessReport::new("suite");
        suite.absorb(r.clone(), 3);
        assert_eq!(suite.rows[0].instance, Some(3));
        assert!(!suite.passed());
        assert!(r.summary().starts_with("demo: FAIL\n  K = 3\n"));
    }
}

//! Engine lookup by identifier.
//!
//! | id | engine |
//! |----|--------|
//! | `c0` | supremum norm |
//! | `day` | Day's norm |
//! | `summing` | `sup_n |x(1)+..+x(n)|` |
//! | `orlicz:default[:K]`, `orlicz:square`, `orlicz:power:<p>` | Luxemburg norms |
//! | `nakano:linear`, `nakano:const:<p>`, `nakano:affine:<p1>:<step>`, `nakano:list:<p1>,<p2>,..` | Nakano norms |
//! | `blockweight:<file>` | block-weight norm read from a block file |
//! | `envelope:<id>`, `prefix-envelope:<id>` | the two equivalent envelope norms |

use std::path::Path;

use super::{
    BlockWeightNorm, BlockWeights, C0Norm, DayNorm, EnvelopeNorm, ExponentTail, NakanoExponents, NakanoNorm,
    NormEngine, OrliczFn, OrliczNorm, PrefixEnvelopeNorm, SummingNorm,
};
use crate::error::{Error, Result};

pub fn engine_from_id(id: &str) -> Result<Box<dyn NormEngine>> {
    let unknown = || Error::UnknownEngine(id.to_string());
    let (head, rest) = match id.split_once(':') {
        Some((h, r)) => (h, Some(r)),
        None => (id, None),
    };
    Ok(match (head, rest) {
        ("c0", None) => Box::new(C0Norm),
        ("day", None) => Box::new(DayNorm),
        ("summing", None) => Box::new(SummingNorm),
        ("orlicz", Some(f)) => Box::new(OrliczNorm::new(orlicz_from_id(f).map_err(|_| unknown())?)),
        ("nakano", Some(p)) => Box::new(NakanoNorm::new(exponents_from_id(p).map_err(|_| unknown())?)),
        ("blockweight", Some(path)) => {
            let text = std::fs::read_to_string(Path::new(path))
                .map_err(|e| Error::Io(format!("cannot read block file `{path}`: {e}")))?;
            Box::new(BlockWeightNorm::new(path, BlockWeights::parse(&text)?))
        }
        ("envelope", Some(inner)) => Box::new(EnvelopeNorm::new(engine_from_id(inner)?)),
        ("prefix-envelope", Some(inner)) => Box::new(PrefixEnvelopeNorm::new(engine_from_id(inner)?)),
        _ => return Err(unknown()),
    })
}

pub fn orlicz_from_id(id: &str) -> Result<OrliczFn> {
    let bad = || Error::InvalidOrlicz(format!("unknown Orlicz function `{id}`"));
    let parts: Vec<&str> = id.split(':').collect();
    match parts.as_slice() {
        ["default"] => OrliczFn::default_exp(2.0),
        ["default", k] => OrliczFn::default_exp(k.parse().map_err(|_| bad())?),
        ["square"] => OrliczFn::power(2.0),
        ["power", p] => OrliczFn::power(p.parse().map_err(|_| bad())?),
        _ => Err(bad()),
    }
}

pub fn exponents_from_id(id: &str) -> Result<NakanoExponents> {
    let bad = || Error::InvalidExponents(format!("unknown exponent sequence `{id}`"));
    let parts: Vec<&str> = id.split(':').collect();
    match parts.as_slice() {
        ["linear"] => Ok(NakanoExponents::linear()),
        ["const", p] => NakanoExponents::constant(p.parse().map_err(|_| bad())?),
        ["affine", p1, step] => NakanoExponents::new(
            id,
            vec![p1.parse().map_err(|_| bad())?],
            ExponentTail::Arithmetic(step.parse().map_err(|_| bad())?),
        ),
        ["list", values] => {
            let head =
                values.split(',').map(|v| v.trim().parse::<f64>().map_err(|_| bad())).collect::<Result<Vec<_>>>()?;
            NakanoExponents::new(id, head, ExponentTail::Constant)
        }
        _ => Err(bad()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn resolves_builtin_ids() {
        for id in [
            "c0",
            "day",
            "summing",
            "orlicz:default",
            "orlicz:default:3",
            "orlicz:square",
            "orlicz:power:3",
            "nakano:linear",
            "nakano:const:2",
            "nakano:affine:1:0.5",
            "nakano:list:1,2,3",
            "envelope:summing",
            "prefix-envelope:day",
        ] {
            let e = engine_from_id(id).unwrap_or_else(|e| panic!("{id}: {e}"));
            assert!(!e.name().is_empty());
        }
        assert_eq!(engine_from_id("orlicz:square").unwrap().name(), "orlicz:square");
        assert_eq!(engine_from_id("nakano:linear").unwrap().name(), "nakano:linear");
    }

    #[test]
    fn rejects_unknown_ids() {
        for id in ["l2", "c0:1", "orlicz:cube", "nakano:list:2,1", "envelope:nope", "orlicz:power:0.5"] {
            assert!(matches!(engine_from_id(id), Err(Error::UnknownEngine(_))), "{id}");
        }
        assert!(matches!(engine_from_id("blockweight:/does/not/exist"), Err(Error::Io(_))));
    }
}

//! Genus bounds for the order of a group of automorphisms of a curve.

use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The five cases of the classification of finite groups acting on a smooth
/// plane curve.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Case {
    #[serde(rename = "a-i")]
    AI,
    #[serde(rename = "a-ii")]
    AII,
    #[serde(rename = "b-i")]
    BI,
    #[serde(rename = "b-ii")]
    BII,
    #[serde(rename = "c")]
    C,
}

impl Case {
    pub const ALL: [Case; 5] = [Case::AI, Case::AII, Case::BI, Case::BII, Case::C];

    pub fn name(self) -> &'static str {
        match self {
            Case::AI => "a-i",
            Case::AII => "a-ii",
            Case::BI => "b-i",
            Case::BII => "b-ii",
            Case::C => "c",
        }
    }
}

impl fmt::Display for Case {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Case {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Case::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown case `{s}`")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "bound", rename_all = "snake_case")]
pub enum BoundInputs {
    Hurwitz { genus: u64 },
    Oikawa { genus: u64, k: u64 },
    Arakawa { genus: u64, k: [u64; 3] },
    Case { case: Case, degree: u32 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundReport {
    pub inputs: BoundInputs,
    pub value: u64,
    /// For the Hurwitz bound: the admissible values of `|G|/(g-1)` above 24.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub exceptional_ratios: Option<Vec<Ratio<u64>>>,
}

/// Above this ratio `|G|/(g-1)` only the listed exceptional values occur.
pub const HURWITZ_GENERIC_RATIO: u64 = 24;

fn check_genus(g: u64) -> Result<()> {
    if g < 2 {
        return Err(Error::Domain(format!("genus {g} < 2")));
    }
    Ok(())
}

pub fn hurwitz(g: u64) -> Result<BoundReport> {
    check_genus(g)?;
    let ratios = [84, 48, 40, 36, 30].map(Ratio::from_integer);
    let mut exceptional = ratios.to_vec();
    exceptional.push(Ratio::new(132, 5));
    Ok(BoundReport {
        inputs: BoundInputs::Hurwitz { genus: g },
        value: 84 * (g - 1),
        exceptional_ratios: Some(exceptional),
    })
}

/// Whether a group order is compatible with the refined Hurwitz bound.
pub fn hurwitz_admits(g: u64, order: u64) -> Result<bool> {
    let report = hurwitz(g)?;
    let ratio = Ratio::new(order, g - 1);
    Ok(ratio <= Ratio::from_integer(HURWITZ_GENERIC_RATIO)
        || report.exceptional_ratios.unwrap_or_default().contains(&ratio))
}

pub fn oikawa(g: u64, k: u64) -> Result<BoundReport> {
    check_genus(g)?;
    if k < 1 {
        return Err(Error::Domain("invariant set must be nonempty".into()));
    }
    Ok(BoundReport {
        inputs: BoundInputs::Oikawa { genus: g, k },
        value: 12 * (g - 1) + 6 * k,
        exceptional_ratios: None,
    })
}

pub fn arakawa(g: u64, k: [u64; 3]) -> Result<BoundReport> {
    check_genus(g)?;
    if k.contains(&0) {
        return Err(Error::Domain("invariant sets must be nonempty".into()));
    }
    Ok(BoundReport {
        inputs: BoundInputs::Arakawa { genus: g, k },
        value: 2 * (g - 1) + k.iter().sum::<u64>(),
        exceptional_ratios: None,
    })
}

/// The order bound attached to each case, for `d ≥ 4`.
pub fn case_bound(case: Case, d: u32) -> Result<BoundReport> {
    if d < 4 {
        return Err(Error::Domain(format!("degree {d} < 4")));
    }
    let n = d as u64;
    let value = match case {
        Case::AI => n * (n - 1),
        Case::AII => (2 * n * (n - 2)).max(60 * n),
        Case::BI => 6 * n * n,
        Case::BII if d == 4 => 168,
        Case::BII => 3 * (n * n - 3 * n + 3),
        Case::C => 360,
    };
    Ok(BoundReport {
        inputs: BoundInputs::Case { case, degree: d },
        value,
        exceptional_ratios: None,
    })
}

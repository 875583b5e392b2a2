//! The catalogue of e–π near-coincidences.

use std::sync::OnceLock;

use super::expr::{parse, Expr};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RelationKind {
    /// `lhs ≈ rhs`, usually written as a ratio close to one.
    NearEqual,
    /// `lhs` is close to an integer; `rhs` records which one.
    NearInteger,
}

impl RelationKind {
    pub fn name(self) -> &'static str {
        match self {
            RelationKind::NearEqual => "near_equal",
            RelationKind::NearInteger => "near_integer",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub id: &'static str,
    pub lhs: Expr,
    pub rhs: Expr,
    pub kind: RelationKind,
    /// The relation as it is usually printed.
    pub formula: &'static str,
    /// The printed numerical value, verbatim.
    pub quoted: &'static str,
    /// Working digits used when none are requested.
    pub default_digits: u32,
}

pub const DEFAULT_DIGITS: u32 = 30;

/// Ramanujan's constant needs 18 integer digits plus the 13 after the point.
pub const RAMANUJAN_DIGITS: u32 = 45;

type Row = (&'static str, RelationKind, &'static str, &'static str, &'static str, &'static str);

const ROWS: [Row; 20] = {
    use RelationKind::{NearEqual as Eq, NearInteger as Int};
    [
        ("R01", Eq, "pi^2/(4*e-1)", "1", "π² = 0.9996(4e−1) ≈ 4e−1", "0.9996"),
        ("R02", Int, "163*(pi-e)", "69", "163(π−e) = 68.99966...", "68.99966..."),
        ("R03", Eq, "(pi^4+pi^5)/e^6", "1", "(π⁴+π⁵)/e⁶ = 0.999999956...", "0.999999956..."),
        ("R04", Int, "pi^9/e^8", "10", "π⁹/e⁸ = 9.9998... ≈ 10", "9.9998..."),
        ("R05", Int, "exp(pi)-pi", "20", "e^π − π = 19.999...", "19.999..."),
        ("R06", Eq, "pi^2*sqrt((pi-e)^3)/e", "1", "π²(π−e)^{3/2}/e = 0.9999869...", "0.9999869..."),
        (
            "R07",
            Int,
            "exp(pi*sqrt(163))",
            "640320^3+744",
            "e^{π√163} = 262537412640768743.99999999999925... ≈ 640320³+744",
            "262537412640768743.99999999999925...",
        ),
        ("R08", Int, "e+2*pi", "9", "e + 2π = 9.001...", "9.001..."),
        ("R09", Int, "pi^2+8*pi", "35", "π² + 8π = 35", "35"),
        ("R10", Eq, "pi", "sqrt(51)-4", "π = √51 − 4 ≈ 3.1414...", "3.1414..."),
        ("R11", Eq, "pi", "512/163", "π = 512/163 = 2⁹/163 = 3.1411...", "3.1411..."),
        ("R12", Int, "pi^2+pi", "13", "π² + π ≈ 13", "13"),
        ("R13", Int, "4*e+pi", "14", "4e + π = 14", "14"),
        ("R14", Int, "pi^3", "31", "π³ ≈ 31", "31"),
        ("R15", Int, "e^3", "20", "e³ = 20.08 ≈ 20", "20.08"),
        ("R16", Eq, "pi^6", "960", "π⁶ = 960 Σ 1/(2n+1)⁶ ≈ 960", "960"),
        ("R17", Eq, "e^8", "96*pi^3", "e⁸ ≈ (3/2)·64π³ = 96π³", "96π³"),
        ("R18", Eq, "exp(pi)", "20+pi", "e^π ≈ 20(1 + π/20) = 20 + π", "20+π"),
        ("R19", Eq, "27*pi^8*(pi-3)^3/(pi^2*e)^2", "1", "27π⁸(π−3)³/(π²e)² ≈ 1", "1"),
        ("R20", Int, "pi^2*e", "27", "π²e ≈ 27", "27"),
    ]
};

/// All relations, in identifier order.
pub fn registry() -> &'static [Relation] {
    static REGISTRY: OnceLock<Vec<Relation>> = OnceLock::new();
    REGISTRY.get_or_init(|| {
        ROWS.iter()
            .map(|&(id, kind, lhs, rhs, formula, quoted)| Relation {
                id,
                lhs: parse(lhs).expect("registry expression parses"),
                rhs: parse(rhs).expect("registry expression parses"),
                kind,
                formula,
                quoted,
                default_digits: if id == "R07" { RAMANUJAN_DIGITS } else { DEFAULT_DIGITS },
            })
            .collect()
    })
}

/// Looks up a relation by identifier, ignoring case.
pub fn relation(id: &str) -> Result<&'static Relation> {
    registry()
        .iter()
        .find(|r| r.id.eq_ignore_ascii_case(id))
        .ok_or_else(|| Error::UnknownRelation(id.to_string()))
}

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::arith::{is_prime, prime_power_decomposition};
use crate::error::{Error, Result};

/// A prime power `q = p^f`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct PrimePower {
    p: u64,
    f: u32,
}

impl PrimePower {
    pub fn new(p: u64, f: u32) -> Result<Self> {
        if !is_prime(p) || f == 0 {
            return Err(Error::domain(format!("{p}^{f} is not a prime power")));
        }
        if p.checked_pow(f).is_none() {
            return Err(Error::domain(format!("{p}^{f} does not fit in 64 bits")));
        }
        Ok(PrimePower { p, f })
    }

    pub fn from_q(q: u64) -> Result<Self> {
        let (p, f) = prime_power_decomposition(q)
            .ok_or_else(|| Error::domain(format!("{q} is not a prime power")))?;
        Ok(PrimePower { p, f })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn f(&self) -> u32 {
        self.f
    }

    pub fn q(&self) -> u64 {
        self.p.pow(self.f)
    }
}

impl fmt::Display for PrimePower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.q())
    }
}

/// Family tag of a finite non-abelian simple group.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Family {
    Alternating,
    Sporadic,
    Linear,
    Unitary,
    Symplectic,
    OrthogonalOdd,
    OrthogonalPlus,
    OrthogonalMinus,
    G2,
    F4,
    E6,
    E7,
    E8,
    Suzuki,
    Ree2G2,
    Ree2F4,
    Steinberg3D4,
    Steinberg2E6,
    Tits,
}

impl Family {
    pub const LIE: [Family; 16] = [
        Family::Linear,
        Family::Unitary,
        Family::Symplectic,
        Family::OrthogonalOdd,
        Family::OrthogonalPlus,
        Family::OrthogonalMinus,
        Family::G2,
        Family::F4,
        Family::E6,
        Family::E7,
        Family::E8,
        Family::Suzuki,
        Family::Ree2G2,
        Family::Ree2F4,
        Family::Steinberg3D4,
        Family::Steinberg2E6,
    ];

    pub fn is_lie_type(self) -> bool {
        !matches!(self, Family::Alternating | Family::Sporadic | Family::Tits)
    }

    /// Classical families carry a dimension parameter; exceptional ones do not.
    pub fn is_classical(self) -> bool {
        matches!(
            self,
            Family::Linear
                | Family::Unitary
                | Family::Symplectic
                | Family::OrthogonalOdd
                | Family::OrthogonalPlus
                | Family::OrthogonalMinus
        )
    }

    /// Smallest dimension and the step between admissible dimensions.
    pub fn dimension_range(self) -> Option<(u32, u32)> {
        match self {
            Family::Alternating => Some((5, 1)),
            Family::Linear => Some((2, 1)),
            Family::Unitary => Some((3, 1)),
            Family::Symplectic => Some((4, 2)),
            Family::OrthogonalOdd => Some((7, 2)),
            Family::OrthogonalPlus | Family::OrthogonalMinus => Some((8, 2)),
            _ => None,
        }
    }

    /// Smallest field size occurring in the family for any dimension.
    pub(crate) fn min_field(self) -> u64 {
        match self {
            Family::OrthogonalOdd | Family::G2 => 3,
            Family::Suzuki | Family::Ree2F4 => 8,
            Family::Ree2G2 => 27,
            _ => 2,
        }
    }

    /// Whether `(n, q)` lies in the family's domain. `n` is ignored for exceptional families.
    pub fn in_domain(self, n: u32, q: PrimePower) -> bool {
        let (p, f, qq) = (q.p(), q.f(), q.q());
        match self {
            Family::Linear => n >= 2 && !(n == 2 && qq <= 3),
            Family::Unitary => n >= 3 && !(n == 3 && qq == 2),
            Family::Symplectic => n >= 4 && n % 2 == 0 && !(n == 4 && qq == 2),
            Family::OrthogonalOdd => n >= 7 && n % 2 == 1 && p % 2 == 1,
            Family::OrthogonalPlus | Family::OrthogonalMinus => n >= 8 && n % 2 == 0,
            Family::G2 => qq >= 3,
            Family::F4 | Family::E6 | Family::E7 | Family::E8 => true,
            Family::Steinberg3D4 | Family::Steinberg2E6 => true,
            Family::Suzuki | Family::Ree2F4 => p == 2 && f % 2 == 1 && f >= 3,
            Family::Ree2G2 => p == 3 && f % 2 == 1 && f >= 3,
            Family::Alternating | Family::Sporadic | Family::Tits => false,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Family::Alternating => "alternating",
            Family::Sporadic => "sporadic",
            Family::Linear => "linear",
            Family::Unitary => "unitary",
            Family::Symplectic => "symplectic",
            Family::OrthogonalOdd => "orthogonal-odd",
            Family::OrthogonalPlus => "orthogonal-plus",
            Family::OrthogonalMinus => "orthogonal-minus",
            Family::G2 => "G2",
            Family::F4 => "F4",
            Family::E6 => "E6",
            Family::E7 => "E7",
            Family::E8 => "E8",
            Family::Suzuki => "suzuki",
            Family::Ree2G2 => "ree-2G2",
            Family::Ree2F4 => "ree-2F4",
            Family::Steinberg3D4 => "steinberg-3D4",
            Family::Steinberg2E6 => "steinberg-2E6",
            Family::Tits => "tits",
        };
        f.write_str(s)
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let all = [Family::Alternating, Family::Sporadic, Family::Tits]
            .into_iter()
            .chain(Family::LIE);
        for fam in all {
            if fam.to_string().eq_ignore_ascii_case(s) {
                return Ok(fam);
            }
        }
        Err(Error::domain(format!("unknown family {s:?}")))
    }
}

/// Identifier of a finite non-abelian simple group.
///
/// Classical groups carry their natural-module dimension `n`, so
/// `Linear(3, 4)` is PSL₃(4) and `Symplectic(4, 3)` is PSp₄(3).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SimpleGroupId {
    Alternating(u32),
    Linear(u32, PrimePower),
    Unitary(u32, PrimePower),
    Symplectic(u32, PrimePower),
    OrthogonalOdd(u32, PrimePower),
    OrthogonalPlus(u32, PrimePower),
    OrthogonalMinus(u32, PrimePower),
    G2(PrimePower),
    F4(PrimePower),
    E6(PrimePower),
    E7(PrimePower),
    E8(PrimePower),
    Suzuki(PrimePower),
    Ree2G2(PrimePower),
    Ree2F4(PrimePower),
    Steinberg3D4(PrimePower),
    Steinberg2E6(PrimePower),
    Sporadic(String),
    Tits,
}

impl SimpleGroupId {
    /// Builds a Lie-type identifier from its family tag; `n` is ignored for exceptional families.
    pub fn lie(family: Family, n: u32, q: PrimePower) -> Result<Self> {
        let g = match family {
            Family::Linear => SimpleGroupId::Linear(n, q),
            Family::Unitary => SimpleGroupId::Unitary(n, q),
            Family::Symplectic => SimpleGroupId::Symplectic(n, q),
            Family::OrthogonalOdd => SimpleGroupId::OrthogonalOdd(n, q),
            Family::OrthogonalPlus => SimpleGroupId::OrthogonalPlus(n, q),
            Family::OrthogonalMinus => SimpleGroupId::OrthogonalMinus(n, q),
            Family::G2 => SimpleGroupId::G2(q),
            Family::F4 => SimpleGroupId::F4(q),
            Family::E6 => SimpleGroupId::E6(q),
            Family::E7 => SimpleGroupId::E7(q),
            Family::E8 => SimpleGroupId::E8(q),
            Family::Suzuki => SimpleGroupId::Suzuki(q),
            Family::Ree2G2 => SimpleGroupId::Ree2G2(q),
            Family::Ree2F4 => SimpleGroupId::Ree2F4(q),
            Family::Steinberg3D4 => SimpleGroupId::Steinberg3D4(q),
            Family::Steinberg2E6 => SimpleGroupId::Steinberg2E6(q),
            other => return Err(Error::domain(format!("{other} is not a Lie-type family"))),
        };
        Ok(g)
    }

    pub fn family(&self) -> Family {
        use SimpleGroupId::*;
        match self {
            Alternating(_) => Family::Alternating,
            Linear(..) => Family::Linear,
            Unitary(..) => Family::Unitary,
            Symplectic(..) => Family::Symplectic,
            OrthogonalOdd(..) => Family::OrthogonalOdd,
            OrthogonalPlus(..) => Family::OrthogonalPlus,
            OrthogonalMinus(..) => Family::OrthogonalMinus,
            G2(_) => Family::G2,
            F4(_) => Family::F4,
            E6(_) => Family::E6,
            E7(_) => Family::E7,
            E8(_) => Family::E8,
            Suzuki(_) => Family::Suzuki,
            Ree2G2(_) => Family::Ree2G2,
            Ree2F4(_) => Family::Ree2F4,
            Steinberg3D4(_) => Family::Steinberg3D4,
            Steinberg2E6(_) => Family::Steinberg2E6,
            Sporadic(_) => Family::Sporadic,
            Tits => Family::Tits,
        }
    }

    /// Degree (alternating) or dimension (classical).
    pub fn rank_param(&self) -> Option<u32> {
        use SimpleGroupId::*;
        match self {
            Alternating(n)
            | Linear(n, _)
            | Unitary(n, _)
            | Symplectic(n, _)
            | OrthogonalOdd(n, _)
            | OrthogonalPlus(n, _)
            | OrthogonalMinus(n, _) => Some(*n),
            _ => None,
        }
    }

    pub fn field(&self) -> Option<PrimePower> {
        use SimpleGroupId::*;
        match self {
            Linear(_, q)
            | Unitary(_, q)
            | Symplectic(_, q)
            | OrthogonalOdd(_, q)
            | OrthogonalPlus(_, q)
            | OrthogonalMinus(_, q)
            | G2(q)
            | F4(q)
            | E6(q)
            | E7(q)
            | E8(q)
            | Suzuki(q)
            | Ree2G2(q)
            | Ree2F4(q)
            | Steinberg3D4(q)
            | Steinberg2E6(q) => Some(*q),
            _ => None,
        }
    }

    /// Rejects parameters outside the family's domain. Sporadic names are
    /// checked against a table at lookup time, not here.
    pub fn check_domain(&self) -> Result<()> {
        let ok = match self {
            SimpleGroupId::Alternating(n) => *n >= 5,
            SimpleGroupId::Sporadic(name) => !name.is_empty(),
            SimpleGroupId::Tits => true,
            g => {
                let q = g.field().expect("Lie type has a field");
                g.family().in_domain(g.rank_param().unwrap_or(0), q)
            }
        };
        if ok {
            Ok(())
        } else {
            Err(Error::domain(format!(
                "{self} is outside its family's domain"
            )))
        }
    }

    /// The canonical representative under the exceptional isomorphisms
    /// L2(4) ≅ L2(5) ≅ A5, L2(9) ≅ A6, L4(2) ≅ A8, L3(2) ≅ L2(7), U4(2) ≅ S4(3).
    pub fn canonical(&self) -> SimpleGroupId {
        use SimpleGroupId::*;
        match self {
            Linear(2, q) if q.q() == 4 || q.q() == 5 => Alternating(5),
            Linear(2, q) if q.q() == 9 => Alternating(6),
            Linear(4, q) if q.q() == 2 => Alternating(8),
            Linear(3, q) if q.q() == 2 => Linear(2, PrimePower { p: 7, f: 1 }),
            Unitary(4, q) if q.q() == 2 => Symplectic(4, PrimePower { p: 3, f: 1 }),
            other => other.clone(),
        }
    }

    pub fn is_canonical(&self) -> bool {
        self.canonical() == *self
    }
}

impl fmt::Display for SimpleGroupId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use SimpleGroupId::*;
        match self {
            Alternating(n) => write!(f, "A{n}"),
            Linear(n, q) => write!(f, "L{n}({q})"),
            Unitary(n, q) => write!(f, "U{n}({q})"),
            Symplectic(n, q) => write!(f, "S{n}({q})"),
            OrthogonalOdd(n, q) => write!(f, "O{n}({q})"),
            OrthogonalPlus(n, q) => write!(f, "O{n}+({q})"),
            OrthogonalMinus(n, q) => write!(f, "O{n}-({q})"),
            G2(q) => write!(f, "G2({q})"),
            F4(q) => write!(f, "F4({q})"),
            E6(q) => write!(f, "E6({q})"),
            E7(q) => write!(f, "E7({q})"),
            E8(q) => write!(f, "E8({q})"),
            Suzuki(q) => write!(f, "Sz({q})"),
            Ree2G2(q) => write!(f, "2G2({q})"),
            Ree2F4(q) => write!(f, "2F4({q})"),
            Steinberg3D4(q) => write!(f, "3D4({q})"),
            Steinberg2E6(q) => write!(f, "2E6({q})"),
            Sporadic(name) => f.write_str(name),
            Tits => f.write_str("2F4(2)'"),
        }
    }
}

impl Serialize for SimpleGroupId {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Parses ATLAS-style names: `A7`, `L3(4)`, `U4(3)`, `S6(2)`, `O7(3)`, `O8+(2)`,
/// `O10-(3)`, `G2(5)`, `Sz(8)`, `2G2(27)`, `2F4(8)`, `3D4(2)`, `2E6(2)`, `2F4(2)'`,
/// or a sporadic name such as `M11`. The result is not canonicalized.
impl FromStr for SimpleGroupId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::GroupName(s.to_string());
        if s.eq_ignore_ascii_case("tits") || s == "2F4(2)'" {
            return Ok(SimpleGroupId::Tits);
        }
        let Some(open) = s.find('(') else {
            // no sporadic name starts with A
            if let Some(deg) = s.strip_prefix('A') {
                if deg.is_empty() || !deg.bytes().all(|b| b.is_ascii_digit()) {
                    return Err(bad());
                }
                return deg
                    .parse()
                    .map(SimpleGroupId::Alternating)
                    .map_err(|_| bad());
            }
            if s.is_empty() || !s.chars().all(|c| c.is_ascii_alphanumeric() || c == '\'') {
                return Err(bad());
            }
            return Ok(SimpleGroupId::Sporadic(s.to_string()));
        };
        let inner = s[open + 1..].strip_suffix(')').ok_or_else(bad)?;
        let q = PrimePower::from_q(inner.trim().parse().map_err(|_| bad())?)?;
        let head = &s[..open];
        let exceptional = match head {
            "G2" => Some(Family::G2),
            "F4" => Some(Family::F4),
            "E6" => Some(Family::E6),
            "E7" => Some(Family::E7),
            "E8" => Some(Family::E8),
            "Sz" | "2B2" => Some(Family::Suzuki),
            "R" | "2G2" => Some(Family::Ree2G2),
            "2F4" => Some(Family::Ree2F4),
            "3D4" => Some(Family::Steinberg3D4),
            "2E6" => Some(Family::Steinberg2E6),
            _ => None,
        };
        if let Some(fam) = exceptional {
            return SimpleGroupId::lie(fam, 0, q);
        }
        let (letter, rest) = head.split_at(1);
        let (digits, family) = match (letter, rest) {
            ("L", d) => (d, Family::Linear),
            ("U", d) => (d, Family::Unitary),
            ("S", d) => (d, Family::Symplectic),
            ("O", d) if d.ends_with('+') => (&d[..d.len() - 1], Family::OrthogonalPlus),
            ("O", d) if d.ends_with('-') => (&d[..d.len() - 1], Family::OrthogonalMinus),
            ("O", d) => (d, Family::OrthogonalOdd),
            _ => return Err(bad()),
        };
        let n: u32 = digits.parse().map_err(|_| bad())?;
        SimpleGroupId::lie(family, n, q)
    }
}

//! Exact order and outer-automorphism formulas for the groups of Lie type
//! and the alternating groups.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::One;

use super::id::{Family, PrimePower};
use crate::arith::factorial;

/// `|T|` written as an unreduced product divided by the order of the centre.
#[derive(Debug, Clone)]
pub(crate) struct OrderParts {
    pub numerator: BigUint,
    pub divisor: u64,
}

impl OrderParts {
    pub fn order(&self) -> BigUint {
        &self.numerator / self.divisor
    }
}

struct Field(BigUint);

impl Field {
    fn pow(&self, e: u32) -> BigUint {
        self.0.pow(e)
    }

    fn minus_one(&self, e: u32) -> BigUint {
        self.pow(e) - 1u32
    }

    fn plus_one(&self, e: u32) -> BigUint {
        self.pow(e) + 1u32
    }

    /// `q^e − (−1)^e`.
    fn twisted(&self, e: u32) -> BigUint {
        if e % 2 == 0 {
            self.minus_one(e)
        } else {
            self.plus_one(e)
        }
    }

    fn product_minus_one(&self, exps: impl IntoIterator<Item = u32>) -> BigUint {
        exps.into_iter()
            .fold(BigUint::one(), |acc, e| acc * self.minus_one(e))
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

/// `gcd(4, q^m + δ)` for δ ∈ {−1, +1}.
fn gcd4_qm(q: u64, m: u32, delta: i64) -> u64 {
    let r = (0..m).fold(1u64, |acc, _| acc * (q % 4) % 4);
    let v = (r as i64 + delta).rem_euclid(4) as u64;
    gcd(4, v)
}

pub(crate) fn alternating_order(n: u32) -> BigUint {
    factorial(n as u64) / 2u32
}

pub(crate) fn alternating_out(n: u32) -> u64 {
    if n == 6 {
        4
    } else {
        2
    }
}

/// Order parts for a Lie-type family at `(n, q)`. Valid for any `q ≥ 2`
/// (not only in-domain values), which the catalog uses for size bounds.
pub(crate) fn lie_order_parts(family: Family, n: u32, q: u64) -> OrderParts {
    let fq = Field(BigUint::from(q));
    let (numerator, divisor) = match family {
        Family::Linear => {
            let num = fq.pow(n * (n - 1) / 2) * fq.product_minus_one(2..=n);
            (num, gcd(n as u64, q - 1))
        }
        Family::Unitary => {
            let num = (2..=n).fold(fq.pow(n * (n - 1) / 2), |acc, i| acc * fq.twisted(i));
            (num, gcd(n as u64, q + 1))
        }
        Family::Symplectic | Family::OrthogonalOdd => {
            let m = n / 2;
            let num = fq.pow(m * m) * fq.product_minus_one((1..=m).map(|i| 2 * i));
            (num, gcd(2, q - 1))
        }
        Family::OrthogonalPlus => {
            let m = n / 2;
            let num =
                fq.pow(m * (m - 1)) * fq.minus_one(m) * fq.product_minus_one((1..m).map(|i| 2 * i));
            (num, gcd4_qm(q, m, -1))
        }
        Family::OrthogonalMinus => {
            let m = n / 2;
            let num =
                fq.pow(m * (m - 1)) * fq.plus_one(m) * fq.product_minus_one((1..m).map(|i| 2 * i));
            (num, gcd4_qm(q, m, 1))
        }
        Family::G2 => (fq.pow(6) * fq.product_minus_one([6, 2]), 1),
        Family::F4 => (fq.pow(24) * fq.product_minus_one([12, 8, 6, 2]), 1),
        Family::E6 => (
            fq.pow(36) * fq.product_minus_one([12, 9, 8, 6, 5, 2]),
            gcd(3, q - 1),
        ),
        Family::E7 => (
            fq.pow(63) * fq.product_minus_one([18, 14, 12, 10, 8, 6, 2]),
            gcd(2, q - 1),
        ),
        Family::E8 => (
            fq.pow(120) * fq.product_minus_one([30, 24, 20, 18, 14, 12, 8, 2]),
            1,
        ),
        Family::Suzuki => (fq.pow(2) * fq.plus_one(2) * fq.minus_one(1), 1),
        Family::Ree2G2 => (fq.pow(3) * fq.plus_one(3) * fq.minus_one(1), 1),
        Family::Ree2F4 => (
            fq.pow(12) * fq.plus_one(6) * fq.minus_one(4) * fq.plus_one(3) * fq.minus_one(1),
            1,
        ),
        Family::Steinberg3D4 => (
            fq.pow(12) * (fq.pow(8) + fq.pow(4) + 1u32) * fq.product_minus_one([6, 2]),
            1,
        ),
        Family::Steinberg2E6 => (
            fq.pow(36)
                * fq.minus_one(12)
                * fq.plus_one(9)
                * fq.minus_one(8)
                * fq.minus_one(6)
                * fq.plus_one(5)
                * fq.minus_one(2),
            gcd(3, q + 1),
        ),
        Family::Alternating | Family::Sporadic | Family::Tits => {
            unreachable!("{family} is not of Lie type")
        }
    };
    OrderParts { numerator, divisor }
}

/// Largest centre order the family can have at dimension `n`.
pub(crate) fn max_center(family: Family, n: u32) -> u64 {
    match family {
        Family::Linear | Family::Unitary => n as u64,
        Family::Symplectic | Family::OrthogonalOdd | Family::E7 => 2,
        Family::OrthogonalPlus | Family::OrthogonalMinus => 4,
        Family::E6 | Family::Steinberg2E6 => 3,
        _ => 1,
    }
}

/// `|Out(T)|` for a Lie-type group, as diagonal × field × graph automorphisms.
pub(crate) fn lie_out_order(family: Family, n: u32, q: PrimePower) -> u64 {
    let (p, f, qq) = (q.p(), q.f() as u64, q.q());
    match family {
        Family::Linear if n == 2 => gcd(2, qq - 1) * f,
        Family::Linear => 2 * gcd(n as u64, qq - 1) * f,
        Family::Unitary => 2 * gcd(n as u64, qq + 1) * f,
        // Sp4(2^f) has a graph automorphism squaring to the Frobenius.
        Family::Symplectic if n == 4 => 2 * f,
        Family::Symplectic => gcd(2, qq - 1) * f,
        Family::OrthogonalOdd => 2 * f,
        Family::OrthogonalPlus => {
            let graph = if n == 8 { 6 } else { 2 };
            graph * gcd4_qm(qq, n / 2, -1) * f
        }
        Family::OrthogonalMinus => 2 * gcd4_qm(qq, n / 2, 1) * f,
        Family::G2 if p == 3 => 2 * f,
        Family::F4 if p == 2 => 2 * f,
        Family::G2 | Family::F4 | Family::E8 => f,
        Family::E6 => 2 * gcd(3, qq - 1) * f,
        Family::E7 => gcd(2, qq - 1) * f,
        Family::Suzuki | Family::Ree2G2 | Family::Ree2F4 => f,
        Family::Steinberg3D4 => 3 * f,
        Family::Steinberg2E6 => 2 * gcd(3, qq + 1) * f,
        Family::Alternating | Family::Sporadic | Family::Tits => {
            unreachable!("{family} is not of Lie type")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn order(family: Family, n: u32, q: u64) -> BigUint {
        lie_order_parts(family, n, q).order()
    }

    fn out(family: Family, n: u32, q: u64) -> u64 {
        lie_out_order(family, n, PrimePower::from_q(q).unwrap())
    }

    fn big(s: &str) -> BigUint {
        s.parse().unwrap()
    }

    #[test]
    fn known_orders() {
        assert_eq!(order(Family::Linear, 2, 7), BigUint::from(168u32));
        assert_eq!(order(Family::Linear, 2, 8), BigUint::from(504u32));
        assert_eq!(order(Family::Linear, 2, 9), BigUint::from(360u32));
        assert_eq!(order(Family::Linear, 3, 4), BigUint::from(20160u32));
        assert_eq!(order(Family::Linear, 4, 2), BigUint::from(20160u32));
        assert_eq!(order(Family::Unitary, 3, 3), BigUint::from(6048u32));
        assert_eq!(order(Family::Unitary, 4, 3), BigUint::from(3265920u32));
        assert_eq!(order(Family::Unitary, 4, 2), BigUint::from(25920u32));
        assert_eq!(order(Family::Symplectic, 4, 3), BigUint::from(25920u32));
        assert_eq!(order(Family::Symplectic, 6, 2), BigUint::from(1451520u32));
        assert_eq!(order(Family::OrthogonalOdd, 7, 3), big("4585351680"));
        assert_eq!(order(Family::OrthogonalPlus, 8, 2), big("174182400"));
        assert_eq!(order(Family::OrthogonalMinus, 8, 2), big("197406720"));
        assert_eq!(order(Family::OrthogonalPlus, 8, 3), big("4952179814400"));
        assert_eq!(order(Family::G2, 0, 3), big("4245696"));
        assert_eq!(order(Family::F4, 0, 2), big("3311126603366400"));
        assert_eq!(order(Family::E6, 0, 2), big("214841575522005575270400"));
        assert_eq!(
            order(Family::E7, 0, 2),
            big("7997476042075799759100487262680802918400")
        );
        assert_eq!(
            order(Family::E8, 0, 2),
            big("337804753143634806261388190614085595079991692242467651576160959909068800000")
        );
        assert_eq!(order(Family::Suzuki, 0, 8), big("29120"));
        assert_eq!(order(Family::Ree2G2, 0, 27), big("10073444472"));
        assert_eq!(order(Family::Ree2F4, 0, 2), big("35942400"));
        assert_eq!(order(Family::Steinberg3D4, 0, 2), big("211341312"));
        assert_eq!(
            order(Family::Steinberg2E6, 0, 2),
            big("76532479683774853939200")
        );
    }

    #[test]
    fn known_out_orders() {
        assert_eq!(out(Family::Linear, 2, 7), 2);
        assert_eq!(out(Family::Linear, 2, 8), 3);
        assert_eq!(out(Family::Linear, 3, 4), 12);
        assert_eq!(out(Family::Unitary, 3, 3), 2);
        assert_eq!(out(Family::Unitary, 3, 5), 6);
        assert_eq!(out(Family::Unitary, 4, 3), 8);
        assert_eq!(out(Family::Symplectic, 4, 3), 2);
        assert_eq!(out(Family::Symplectic, 4, 4), 4);
        assert_eq!(out(Family::Symplectic, 6, 2), 1);
        assert_eq!(out(Family::OrthogonalOdd, 7, 3), 2);
        assert_eq!(out(Family::OrthogonalPlus, 8, 2), 6);
        assert_eq!(out(Family::OrthogonalPlus, 8, 3), 24);
        assert_eq!(out(Family::OrthogonalMinus, 8, 2), 2);
        assert_eq!(out(Family::OrthogonalMinus, 8, 3), 4);
        assert_eq!(out(Family::G2, 0, 3), 2);
        assert_eq!(out(Family::G2, 0, 4), 2);
        assert_eq!(out(Family::F4, 0, 2), 2);
        assert_eq!(out(Family::E6, 0, 4), 12);
        assert_eq!(out(Family::Steinberg3D4, 0, 2), 3);
        assert_eq!(out(Family::Steinberg2E6, 0, 2), 6);
        assert_eq!(out(Family::Suzuki, 0, 32), 5);
    }

    #[test]
    fn alternating_facts() {
        assert_eq!(alternating_order(5), BigUint::from(60u32));
        assert_eq!(alternating_order(6), BigUint::from(360u32));
        assert_eq!(alternating_out(6), 4);
        assert_eq!(alternating_out(7), 2);
    }
}

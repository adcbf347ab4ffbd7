//! Signs and the parity of the ambient dimension.
//!
//! Every sign in the theory depends on `d` only through `d mod 2`. The
//! bracket has degree `d - 1` and each graph edge has degree `d - 1`, so all
//! rules below are Koszul signs for that grading, expressed against the
//! in-order numbering of internal vertices.

use core::ops::{Mul, MulAssign, Neg};

use num_bigint::BigInt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    /// `(-1)^e` where only the parity of `e` matters.
    pub fn from_odd(odd: bool) -> Sign {
        if odd {
            Sign::Minus
        } else {
            Sign::Plus
        }
    }

    pub fn pow(self, e: usize) -> Sign {
        match self {
            Sign::Plus => Sign::Plus,
            Sign::Minus => Sign::from_odd(e % 2 == 1),
        }
    }

    pub fn is_minus(self) -> bool {
        self == Sign::Minus
    }

    pub fn to_i32(self) -> i32 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn to_bigint(self) -> BigInt {
        BigInt::from(self.to_i32())
    }

    /// Sign of a sequence of distinct keys read as a permutation of their
    /// sorted order (parity of the inversion count).
    pub fn of_sequence<T: Ord>(seq: &[T]) -> Sign {
        let mut inversions = 0usize;
        for a in 0..seq.len() {
            for b in a + 1..seq.len() {
                if seq[a] > seq[b] {
                    inversions += 1;
                }
            }
        }
        Sign::from_odd(inversions % 2 == 1)
    }
}

impl Mul for Sign {
    type Output = Sign;
    fn mul(self, rhs: Sign) -> Sign {
        Sign::from_odd(self.is_minus() != rhs.is_minus())
    }
}

impl MulAssign for Sign {
    fn mul_assign(&mut self, rhs: Sign) {
        *self = *self * rhs;
    }
}

impl Neg for Sign {
    type Output = Sign;
    fn neg(self) -> Sign {
        self * Sign::Minus
    }
}

/// The dimension `d` reduced mod 2.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub const BOTH: [Parity; 2] = [Parity::Even, Parity::Odd];

    pub fn of(d: u64) -> Parity {
        if d % 2 == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    /// A representative dimension (2 or 3).
    pub fn representative(self) -> u64 {
        match self {
            Parity::Even => 2,
            Parity::Odd => 3,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        }
    }

    fn d_odd(self) -> bool {
        self == Parity::Odd
    }

    /// Whether `d - 1` is odd, i.e. whether brackets and edges are odd.
    pub fn shifted_odd(self) -> bool {
        self == Parity::Even
    }

    /// `(-1)^{(d-1) e}`.
    pub fn shifted(self, e: usize) -> Sign {
        Sign::from_odd(self.shifted_odd() && e % 2 == 1)
    }

    /// `[T1,T2] = s * [T2,T1]` where `a`, `b` count the brackets (internal
    /// vertices) of the two arguments: `s = (-1)^{d + (ab+a+b)(d-1)}`.
    pub fn antisymmetry(self, a: usize, b: usize) -> Sign {
        Sign::from_odd(self.d_odd()) * self.shifted(a * b + a + b)
    }

    /// Weight `(-1)^{m A (d-1)}` of the Jacobi term `[[T1,T2],T3]` in which
    /// the middle argument `T2` has `m` brackets and the three arguments have
    /// `A` brackets in total. For even `A` the relation is unsigned.
    pub fn jacobi_weight(self, middle: usize, total: usize) -> Sign {
        self.shifted(middle * total)
    }

    /// Reordering forest components by a permutation `sigma` of internal
    /// vertices contributes `sigma^{d-1}`.
    pub fn commutativity(self, sigma: Sign) -> Sign {
        if self.shifted_odd() {
            sigma
        } else {
            Sign::Plus
        }
    }

    /// Graph relating to another by `k` arrow reversals and an edge
    /// permutation `sigma`: `G1 = (-1)^{kd} sigma^{d-1} G2`.
    pub fn reversal(self, k: usize, sigma: Sign) -> Sign {
        Sign::from_odd(self.d_odd() && k % 2 == 1) * self.commutativity(sigma)
    }

    /// `[X, Y.Z] = leibniz(x, y) Y.[X,Z] + [X,Y].Z` where `x`, `y` are the
    /// bracket counts of `X` and `Y`: `(-1)^{(x+1) y (d-1)}`.
    pub fn leibniz(self, x: usize, y: usize) -> Sign {
        self.shifted((x + 1) * y)
    }

    /// Global sign `pi^{d-1}` of a cooperad structure map.
    pub fn cooperad(self, pi: Sign) -> Sign {
        self.commutativity(pi)
    }

    /// Koszul sign for substituting an element with `k` brackets past `after`
    /// internal vertices: `(-1)^{(d-1) k after}`.
    pub fn substitution(self, k: usize, after: usize) -> Sign {
        self.shifted(k * after)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sequence_sign() {
        assert_eq!(Sign::of_sequence(&[1, 2, 3]), Sign::Plus);
        assert_eq!(Sign::of_sequence(&[2, 1, 3]), Sign::Minus);
        assert_eq!(Sign::of_sequence(&[3, 1, 2]), Sign::Plus);
        assert_eq!(Sign::of_sequence::<u8>(&[]), Sign::Plus);
    }

    #[test]
    fn leaf_antisymmetry_is_minus_one_to_the_d() {
        assert_eq!(Parity::Even.antisymmetry(0, 0), Sign::Plus);
        assert_eq!(Parity::Odd.antisymmetry(0, 0), Sign::Minus);
    }

    #[test]
    fn odd_dimension_signs_are_ungraded() {
        let p = Parity::Odd;
        for a in 0..4 {
            for b in 0..4 {
                assert_eq!(p.antisymmetry(a, b), Sign::Minus);
                assert_eq!(p.leibniz(a, b), Sign::Plus);
                assert_eq!(p.substitution(a, b), Sign::Plus);
            }
        }
        assert_eq!(p.reversal(1, Sign::Minus), Sign::Minus);
        assert_eq!(p.reversal(2, Sign::Minus), Sign::Plus);
    }
}

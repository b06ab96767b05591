//! Finitely generated abelian groups in invariant-factor form.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

/// `Z^free_rank + Z/t1 + ... + Z/tk` with `2 <= t1 | t2 | ... | tk`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbelianGroupInvariants {
    free_rank: usize,
    torsion: Vec<BigInt>,
}

impl AbelianGroupInvariants {
    pub fn new(free_rank: usize, torsion: Vec<BigInt>) -> Self {
        for (i, t) in torsion.iter().enumerate() {
            assert!(t >= &BigInt::from(2), "invariant factors are at least 2");
            if i > 0 {
                assert!(
                    t.mod_floor(&torsion[i - 1]).is_zero(),
                    "invariant factors must form a divisor chain"
                );
            }
        }
        AbelianGroupInvariants { free_rank, torsion }
    }

    pub fn trivial() -> Self {
        Self::free(0)
    }

    pub fn free(rank: usize) -> Self {
        AbelianGroupInvariants {
            free_rank: rank,
            torsion: Vec::new(),
        }
    }

    pub fn cyclic(order: BigInt) -> Self {
        assert!(order >= BigInt::from(1));
        if order == BigInt::from(1) {
            Self::trivial()
        } else {
            Self::new(0, vec![order])
        }
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn torsion(&self) -> &[BigInt] {
        &self.torsion
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    /// Order of the torsion subgroup (the whole group when finite).
    pub fn torsion_order(&self) -> BigInt {
        self.torsion.iter().product()
    }
}

impl fmt::Display for AbelianGroupInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        for t in &self.torsion {
            parts.push(format!("Z/{t}"));
        }
        write!(f, "{}", parts.join(" \u{2295} "))
    }
}

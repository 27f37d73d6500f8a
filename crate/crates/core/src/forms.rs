//! Class numbers of imaginary quadratic discriminants by counting reduced forms.

use crate::error::{Error, Result};
use num_integer::Integer;
use serde::{Deserialize, Serialize};

/// Reduced primitive forms `(A, B, C)` of one negative discriminant.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuadFormClassCount {
    pub discriminant: i64,
    pub h: usize,
    pub forms: Vec<(i64, i64, i64)>,
}

/// `|B| <= A <= C`, with `B >= 0` whenever `|B| = A` or `A = C`.
pub fn is_reduced(a: i64, b: i64, c: i64) -> bool {
    b.abs() <= a && a <= c && !((b.abs() == a || a == c) && b < 0)
}

pub fn class_number_imag(disc: i64) -> Result<QuadFormClassCount> {
    if disc >= 0 || !matches!(disc.rem_euclid(4), 0 | 1) {
        return Err(Error::BadDiscriminant(disc));
    }
    let abs = disc.unsigned_abs() as i128;
    let mut forms = Vec::new();
    // A reduced form has 3A^2 <= |disc|.
    let mut a: i64 = 1;
    while 3 * (a as i128) * (a as i128) <= abs {
        for b in -a + 1..=a {
            if (b - disc).rem_euclid(2) != 0 {
                continue;
            }
            let num = (b as i128) * (b as i128) - disc as i128;
            let den = 4 * a as i128;
            if num % den != 0 {
                continue;
            }
            let c = (num / den) as i64;
            if !is_reduced(a, b, c) || a.gcd(&b).gcd(&c) != 1 {
                continue;
            }
            forms.push((a, b, c));
        }
        a += 1;
    }
    Ok(QuadFormClassCount { discriminant: disc, h: forms.len(), forms })
}

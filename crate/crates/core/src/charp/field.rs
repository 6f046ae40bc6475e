//! Small finite fields `F_{p^e}` with precomputed tables.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FieldId {
    F2,
    F3,
    F4,
    F5,
    F7,
    F8,
    F9,
    F27,
}

impl FieldId {
    pub const ALL: [FieldId; 8] = [
        FieldId::F2,
        FieldId::F3,
        FieldId::F4,
        FieldId::F5,
        FieldId::F7,
        FieldId::F8,
        FieldId::F9,
        FieldId::F27,
    ];

    pub fn characteristic(self) -> u32 {
        match self {
            FieldId::F2 | FieldId::F4 | FieldId::F8 => 2,
            FieldId::F3 | FieldId::F9 | FieldId::F27 => 3,
            FieldId::F5 => 5,
            FieldId::F7 => 7,
        }
    }

    /// Low coefficients of the monic irreducible defining the field over
    /// its prime field; empty for prime fields.
    fn irreducible(self) -> &'static [u32] {
        match self {
            FieldId::F4 => &[1, 1],     // s^2 + s + 1
            FieldId::F8 => &[1, 1, 0],  // s^3 + s + 1
            FieldId::F9 => &[1, 0],     // s^2 + 1
            FieldId::F27 => &[1, 2, 0], // s^3 - s + 1
            _ => &[],
        }
    }
}

impl fmt::Display for FieldId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl FromStr for FieldId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        FieldId::ALL
            .into_iter()
            .find(|id| id.to_string().eq_ignore_ascii_case(s))
            .ok_or_else(|| format!("unknown field {s:?}"))
    }
}

/// Elements are indices `sum c_i p^i` for the polynomial `sum c_i s^i`.
pub type Fe = u16;

#[derive(Clone, Debug)]
pub struct FiniteField {
    id: FieldId,
    p: u32,
    degree: usize,
    size: usize,
    add: Vec<Fe>,
    mul: Vec<Fe>,
    neg: Vec<Fe>,
    inv: Vec<Fe>,
}

impl FiniteField {
    pub fn new(id: FieldId) -> Self {
        let p = id.characteristic();
        let low = id.irreducible();
        let degree = low.len().max(1);
        let size = (p as usize).pow(degree as u32);

        let digits = |mut v: usize| -> Vec<u32> {
            (0..degree)
                .map(|_| {
                    let d = (v % p as usize) as u32;
                    v /= p as usize;
                    d
                })
                .collect()
        };
        let index = |ds: &[u32]| -> Fe {
            ds.iter().rev().fold(0usize, |acc, &d| acc * p as usize + d as usize) as Fe
        };
        let poly_mul = |a: &[u32], b: &[u32]| -> Vec<u32> {
            let mut prod = vec![0u32; 2 * degree];
            for (i, x) in a.iter().enumerate() {
                for (j, y) in b.iter().enumerate() {
                    prod[i + j] = (prod[i + j] + x * y) % p;
                }
            }
            if !low.is_empty() {
                for k in (degree..prod.len()).rev() {
                    let lead = prod[k];
                    if lead == 0 {
                        continue;
                    }
                    prod[k] = 0;
                    for (i, c) in low.iter().enumerate() {
                        let pos = k - degree + i;
                        prod[pos] = (prod[pos] + (p - lead) * c) % p;
                    }
                }
            }
            prod.truncate(degree);
            prod
        };

        let mut add = vec![0; size * size];
        let mut mul = vec![0; size * size];
        let mut neg = vec![0; size];
        for a in 0..size {
            let da = digits(a);
            neg[a] = index(&da.iter().map(|&d| (p - d) % p).collect::<Vec<_>>());
            for b in 0..size {
                let db = digits(b);
                let sum: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                add[a * size + b] = index(&sum);
                mul[a * size + b] = index(&poly_mul(&da, &db));
            }
        }
        let mut inv = vec![0; size];
        for a in 1..size {
            inv[a] = (1..size)
                .find(|&b| mul[a * size + b] == 1)
                .expect("defining polynomial is irreducible") as Fe;
        }
        FiniteField {
            id,
            p,
            degree,
            size,
            add,
            mul,
            neg,
            inv,
        }
    }

    pub fn id(&self) -> FieldId {
        self.id
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn elements(&self) -> impl Iterator<Item = Fe> {
        0..self.size as Fe
    }

    pub fn add(&self, a: Fe, b: Fe) -> Fe {
        self.add[a as usize * self.size + b as usize]
    }

    pub fn sub(&self, a: Fe, b: Fe) -> Fe {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: Fe, b: Fe) -> Fe {
        self.mul[a as usize * self.size + b as usize]
    }

    pub fn neg(&self, a: Fe) -> Fe {
        self.neg[a as usize]
    }

    /// Panics on zero.
    pub fn inv(&self, a: Fe) -> Fe {
        assert!(a != 0, "zero has no inverse");
        self.inv[a as usize]
    }

    /// Renders an element as a polynomial in `s`.
    pub fn format(&self, a: Fe) -> String {
        if a == 0 {
            return "0".into();
        }
        let mut v = a as u32;
        let mut terms = Vec::new();
        for i in 0..self.degree {
            let d = v % self.p;
            v /= self.p;
            if d == 0 {
                continue;
            }
            terms.push(match (i, d) {
                (0, d) => d.to_string(),
                (1, 1) => "s".into(),
                (1, d) => format!("{d}s"),
                (i, 1) => format!("s^{i}"),
                (i, d) => format!("{d}s^{i}"),
            });
        }
        terms.reverse();
        terms.join("+")
    }
}

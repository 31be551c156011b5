//! The ideal class group of a negative discriminant.

use serde::{Deserialize, Serialize};

use crate::form::{reduced_forms, QuadForm};
use crate::{Discriminant, QuadError};

/// A class, indexed into [`ClassGroup::forms`]; index 0 is principal.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct IdealClass(pub usize);

/// The form class group with a precomputed composition table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassGroup {
    disc: Discriminant,
    forms: Vec<QuadForm>,
    table: Vec<Vec<usize>>,
    genus: Vec<usize>,
    genus_count: usize,
}

/// Builds the class group of primitive forms of discriminant `d`.
pub fn class_group(d: i64) -> Result<ClassGroup, QuadError> {
    ClassGroup::new(d)
}

fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    // returns (g, x, y) with a x + b y = g ≥ 0
    let (mut r0, mut r1, mut s0, mut s1, mut t0, mut t1) = (a, b, 1i128, 0i128, 0i128, 1i128);
    while r1 != 0 {
        let q = r0.div_euclid(r1);
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 < 0 {
        (-r0, -s0, -t0)
    } else {
        (r0, s0, t0)
    }
}

/// Dirichlet composition of two primitive forms of the same discriminant,
/// followed by reduction.
pub(crate) fn compose_forms(f1: QuadForm, f2: QuadForm) -> QuadForm {
    let d = f1.disc();
    debug_assert_eq!(d, f2.disc());
    let (mut f1, mut f2) = (f1, f2);
    if f1.a > f2.a {
        std::mem::swap(&mut f1, &mut f2);
    }
    let (a1, b1) = (f1.a as i128, f1.b as i128);
    let (a2, b2, c2) = (f2.a as i128, f2.b as i128, f2.c as i128);
    let s = (b1 + b2) / 2;
    let n = b2 - s;
    let (y1, dd) = if a2 % a1 == 0 {
        (0, a1)
    } else {
        let (g, u, _v) = ext_gcd(a2, a1);
        (u, g)
    };
    let (x2, y2, d1) = if s % dd == 0 {
        (0, -1, dd)
    } else {
        let (g, u, v) = ext_gcd(s, dd);
        (u, -v, g)
    };
    let v1 = a1 / d1;
    let v2 = a2 / d1;
    let r = (y1 * y2 * n - x2 * c2).rem_euclid(v1);
    let b3 = b2 + 2 * v2 * r;
    let a3 = v1 * v2;
    let c3 = (b3 * b3 - d as i128) / (4 * a3);
    debug_assert_eq!(b3 * b3 - 4 * a3 * c3, d as i128);
    let conv = |x: i128| i64::try_from(x).expect("composed form fits in i64");
    QuadForm::new(conv(a3), conv(b3), conv(c3)).reduce()
}

impl ClassGroup {
    /// Enumerates reduced primitive forms and tabulates composition.
    pub fn new(d: i64) -> Result<Self, QuadError> {
        let disc = Discriminant::new(d)?;
        let mut forms = reduced_forms(d, true);
        // principal form first
        let principal = QuadForm::principal(d);
        let pos = forms.iter().position(|f| *f == principal).expect("principal form is reduced");
        forms.swap(0, pos);
        let h = forms.len();
        let index: std::collections::HashMap<QuadForm, usize> = forms.iter().enumerate().map(|(i, f)| (*f, i)).collect();
        let table: Vec<Vec<usize>> = (0..h)
            .map(|i| (0..h).map(|j| index[&compose_forms(forms[i], forms[j])]).collect())
            .collect();
        // genera are the cosets of the subgroup of squares
        let squares: std::collections::BTreeSet<usize> = (0..h).map(|i| table[i][i]).collect();
        let mut genus = vec![usize::MAX; h];
        let mut genus_count = 0;
        for i in 0..h {
            if genus[i] != usize::MAX {
                continue;
            }
            for &s in &squares {
                genus[table[i][s]] = genus_count;
            }
            genus_count += 1;
        }
        Ok(ClassGroup { disc, forms, table, genus, genus_count })
    }

    /// The discriminant.
    pub fn discriminant(&self) -> Discriminant {
        self.disc
    }

    /// Class number `h`.
    pub fn order(&self) -> usize {
        self.forms.len()
    }

    /// Number of units `w`.
    pub fn units(&self) -> u32 {
        self.disc.units()
    }

    /// Reduced representatives, principal form first.
    pub fn forms(&self) -> &[QuadForm] {
        &self.forms
    }

    /// Reduced representative of a class.
    pub fn form(&self, c: IdealClass) -> QuadForm {
        self.forms[c.0]
    }

    /// All classes.
    pub fn classes(&self) -> impl Iterator<Item = IdealClass> + '_ {
        (0..self.forms.len()).map(IdealClass)
    }

    /// The principal class.
    pub fn identity(&self) -> IdealClass {
        IdealClass(0)
    }

    /// Class of an arbitrary primitive form of this discriminant.
    pub fn index_of(&self, f: &QuadForm) -> Option<IdealClass> {
        if f.disc() != self.disc.value() || !f.is_primitive() {
            return None;
        }
        let r = f.reduce();
        self.forms.iter().position(|g| *g == r).map(IdealClass)
    }

    /// Product of two classes.
    pub fn compose(&self, x: IdealClass, y: IdealClass) -> IdealClass {
        IdealClass(self.table[x.0][y.0])
    }

    /// Moves `target` by the class `c` (the action of the Artin symbol of
    /// `c` on class-group-indexed data, realized as translation).
    pub fn artin_translate(&self, c: IdealClass, target: IdealClass) -> IdealClass {
        self.compose(c, target)
    }

    /// Inverse class (`[a, −b, c]`).
    pub fn inverse(&self, x: IdealClass) -> IdealClass {
        self.index_of(&self.forms[x.0].opposite()).expect("inverse is a class")
    }

    /// `x^k` for any integer `k`.
    pub fn pow(&self, x: IdealClass, k: i64) -> IdealClass {
        let base = if k < 0 { self.inverse(x) } else { x };
        (0..k.unsigned_abs()).fold(self.identity(), |acc, _| self.compose(acc, base))
    }

    /// Genus index of a class (cosets of the squares).
    pub fn genus_of(&self, x: IdealClass) -> usize {
        self.genus[x.0]
    }

    /// Number of genera.
    pub fn genus_count(&self) -> usize {
        self.genus_count
    }

    /// Number of classes per genus.
    pub fn genus_size(&self) -> usize {
        self.order() / self.genus_count
    }

    /// Primitive ideals of norm `a`, as reduced class indices (one entry
    /// per ideal `aℤ + ((−b + √D)/2)ℤ`, `b mod 2a`, `b² ≡ D mod 4a`).
    pub fn primitive_ideals_of_norm(&self, a: u64) -> Vec<IdealClass> {
        let d = self.disc.value();
        let a = a as i64;
        let mut out = Vec::new();
        for b in 0..2 * a {
            if (b * b - d).rem_euclid(4 * a) == 0 {
                let f = QuadForm::new(a, b, (b * b - d) / (4 * a));
                if let Some(c) = self.index_of(&f) {
                    out.push(c);
                }
            }
        }
        out
    }

    /// `ρ(n, C)`: the number of integral ideals of norm `n` in class `C`
    /// (fundamental discriminants; every ideal is `g·𝔞` with `𝔞` primitive).
    pub fn count_ideals_in_class(&self, n: u64, c: IdealClass) -> u64 {
        let mut total = 0;
        let mut g = 1u64;
        while g * g <= n {
            if n % (g * g) == 0 {
                total += self.primitive_ideals_of_norm(n / (g * g)).iter().filter(|x| **x == c).count() as u64;
            }
            g += 1;
        }
        total
    }

    /// Number of ideals of norm `n` whose class lies in genus `genus`.
    pub fn count_ideals_in_genus(&self, n: u64, genus: usize) -> u64 {
        self.classes().filter(|c| self.genus_of(*c) == genus).map(|c| self.count_ideals_in_class(n, c)).sum()
    }

    /// The JSON shape `{D, forms: [[a,b,c]…], composition: [[i,j,k]…]}`.
    pub fn to_json(&self) -> serde_json::Value {
        let forms: Vec<[i64; 3]> = self.forms.iter().map(|f| [f.a, f.b, f.c]).collect();
        let mut comp = Vec::new();
        for (i, row) in self.table.iter().enumerate() {
            for (j, k) in row.iter().enumerate() {
                comp.push([i, j, *k]);
            }
        }
        serde_json::json!({ "D": self.disc.value(), "forms": forms, "composition": comp })
    }
}

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::presentation::{Presentation, Word};

/// A finite group given by its full multiplication table.
///
/// Element `0` is the identity. Every element carries a shortest word over
/// the generators found by breadth-first search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConcreteGroup {
    order: usize,
    mul: Vec<u32>,
    inv: Vec<u32>,
    gens: Vec<usize>,
    gen_names: Vec<String>,
    element_words: Vec<Word>,
    element_orders: Vec<u32>,
}

impl ConcreteGroup {
    /// Builds a group from a row-major table. Row and column 0 must be the
    /// identity and `gens` must generate the whole group.
    pub fn from_table(mul: Vec<u32>, gens: Vec<usize>, gen_names: Vec<String>) -> Result<Self> {
        let order = (mul.len() as f64).sqrt().round() as usize;
        if order == 0 || order * order != mul.len() {
            return Err(Error::InvalidTable("table is not square".into()));
        }
        if gens.len() != gen_names.len() {
            return Err(Error::InvalidTable("generator names do not match generators".into()));
        }
        for x in 0..order {
            if mul[x] as usize != x || mul[x * order] as usize != x {
                return Err(Error::InvalidTable("element 0 is not the identity".into()));
            }
        }
        if gens.iter().any(|&g| g >= order) {
            return Err(Error::InvalidTable("generator out of range".into()));
        }
        let mut inv = vec![u32::MAX; order];
        for x in 0..order {
            let row = &mul[x * order..(x + 1) * order];
            if let Some(y) = row.iter().position(|&v| v == 0) {
                inv[x] = y as u32;
            } else {
                return Err(Error::InvalidTable(format!("element {x} has no inverse")));
            }
        }

        let mut words: Vec<Option<Word>> = vec![None; order];
        words[0] = Some(Word::identity());
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for (i, &g) in gens.iter().enumerate() {
                for (letter, s) in [(i as i32 + 1, g), (-(i as i32 + 1), inv[g] as usize)] {
                    let y = mul[x * order + s] as usize;
                    if words[y].is_none() {
                        let mut w = words[x].clone().unwrap();
                        w.push(letter);
                        words[y] = Some(w);
                        queue.push_back(y);
                    }
                }
            }
        }
        let element_words = words
            .into_iter()
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| Error::InvalidTable("generators do not generate the group".into()))?;

        let mut element_orders = vec![1u32; order];
        for x in 1..order {
            let (mut y, mut k) = (x, 1u32);
            while y != 0 {
                y = mul[y * order + x] as usize;
                k += 1;
                if k as usize > order {
                    return Err(Error::InvalidTable(format!("element {x} has no finite order")));
                }
            }
            element_orders[x] = k;
        }

        Ok(ConcreteGroup {
            order,
            mul,
            inv,
            gens,
            gen_names,
            element_words,
            element_orders,
        })
    }

    pub fn trivial() -> Self {
        Self::from_table(vec![0], Vec::new(), Vec::new()).unwrap()
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.order + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a] as usize
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn generators(&self) -> &[usize] {
        &self.gens
    }

    pub fn generator_names(&self) -> &[String] {
        &self.gen_names
    }

    pub fn element_word(&self, x: usize) -> &Word {
        &self.element_words[x]
    }

    /// The element's representative word rendered with generator names.
    pub fn word_string(&self, x: usize) -> String {
        self.element_words[x].display(&self.gen_names).to_string()
    }

    pub fn element_order(&self, x: usize) -> usize {
        self.element_orders[x] as usize
    }

    pub fn table(&self) -> &[u32] {
        &self.mul
    }

    pub fn pow(&self, x: usize, k: i64) -> usize {
        let base = if k < 0 { self.inv(x) } else { x };
        let e = k.unsigned_abs() % self.element_order(x) as u64;
        let mut acc = 0;
        for _ in 0..e {
            acc = self.mul(acc, base);
        }
        acc
    }

    /// `[x, y] = x⁻¹ y⁻¹ x y`
    pub fn commutator(&self, x: usize, y: usize) -> usize {
        let a = self.mul(self.inv(x), self.inv(y));
        self.mul(self.mul(a, x), y)
    }

    /// `x^y = y⁻¹ x y`
    pub fn conjugate(&self, x: usize, y: usize) -> usize {
        self.mul(self.mul(self.inv(y), x), y)
    }

    /// Left-to-right product of generator images.
    pub fn evaluate(&self, w: &Word) -> Result<usize> {
        let mut acc = 0;
        for &l in w.letters() {
            let i = l.unsigned_abs() as usize;
            if i == 0 || i > self.gens.len() {
                return Err(Error::GeneratorOutOfRange {
                    index: l,
                    count: self.gens.len(),
                });
            }
            let g = self.gens[i - 1];
            acc = self.mul(acc, if l > 0 { g } else { self.inv(g) });
        }
        Ok(acc)
    }

    /// Returns `(p, n)` with `|G| = pⁿ`, or `None` unless the order is a
    /// prime power greater than one.
    pub fn prime_power(&self) -> Option<(u64, u32)> {
        prime_power(self.order as u64)
    }

    /// A presentation read off the Cayley graph: one relator
    /// `w(x)·s·w(xs)⁻¹` per element `x` and generator `s` off the
    /// breadth-first spanning tree.
    pub fn to_presentation(&self) -> Presentation {
        let mut relators = Vec::new();
        for x in 0..self.order {
            for (i, &g) in self.gens.iter().enumerate() {
                let y = self.mul(x, g);
                let mut w = self.element_words[x].clone();
                w.push(i as i32 + 1);
                let r = w.concat(&self.element_words[y].inverse()).free_reduce();
                if !r.is_empty() {
                    relators.push(r);
                }
            }
        }
        relators.sort();
        relators.dedup();
        Presentation::new(self.gen_names.clone(), relators)
            .expect("generator names of a built group are valid")
    }

    /// Checks the Latin-square property, inverses and associativity.
    /// Associativity is exhaustive up to order 512 and sampled above.
    pub fn validate(&self) -> Result<()> {
        let n = self.order;
        let mut seen = vec![0usize; n];
        for pass in 1..=2 * n {
            let x = (pass - 1) % n;
            let by_row = pass <= n;
            for y in 0..n {
                let v = if by_row { self.mul(x, y) } else { self.mul(y, x) };
                if seen[v] == pass {
                    return Err(Error::InvalidTable("not a Latin square".into()));
                }
                seen[v] = pass;
            }
        }
        for x in 0..n {
            if self.mul(x, self.inv(x)) != 0 {
                return Err(Error::InvalidTable("inverse table inconsistent".into()));
            }
        }
        let check = |a: usize, b: usize, c: usize| self.mul(self.mul(a, b), c) == self.mul(a, self.mul(b, c));
        if n <= 512 {
            for a in 0..n {
                for b in 0..n {
                    let ab = self.mul(a, b);
                    for c in 0..n {
                        if self.mul(ab, c) != self.mul(a, self.mul(b, c)) {
                            return Err(Error::InvalidTable("not associative".into()));
                        }
                    }
                }
            }
        } else {
            // xorshift sampling; deterministic
            let mut s: u64 = 0x9E37_79B9_7F4A_7C15;
            let mut next = || {
                s ^= s << 13;
                s ^= s >> 7;
                s ^= s << 17;
                (s % n as u64) as usize
            };
            for _ in 0..200_000 {
                let (a, b, c) = (next(), next(), next());
                if !check(a, b, c) {
                    return Err(Error::InvalidTable("not associative".into()));
                }
            }
        }
        Ok(())
    }

    pub fn dump(&self) -> GroupDump {
        GroupDump {
            order: self.order,
            generator_names: self.gen_names.clone(),
            gens: self.gens.clone(),
            mul: self.mul.clone(),
            element_words: self.element_words.clone(),
        }
    }

    pub fn from_dump(d: &GroupDump) -> Result<Self> {
        let g = Self::from_table(d.mul.clone(), d.gens.clone(), d.generator_names.clone())?;
        if g.order != d.order {
            return Err(Error::InvalidTable("order field does not match table".into()));
        }
        Ok(g)
    }
}

/// JSON form of a [`ConcreteGroup`]: exact integers, row-major table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupDump {
    pub order: usize,
    pub generator_names: Vec<String>,
    pub gens: Vec<usize>,
    pub mul: Vec<u32>,
    pub element_words: Vec<Word>,
}

pub fn prime_power(n: u64) -> Option<(u64, u32)> {
    if n < 2 {
        return None;
    }
    let p = (2..=n).find(|d| n.is_multiple_of(*d)).unwrap();
    let (mut m, mut k) = (n, 0);
    while m % p == 0 {
        m /= p;
        k += 1;
    }
    (m == 1).then_some((p, k))
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyclic(n: usize) -> ConcreteGroup {
        let mut mul = Vec::new();
        for a in 0..n {
            for b in 0..n {
                mul.push(((a + b) % n) as u32);
            }
        }
        ConcreteGroup::from_table(mul, vec![1], vec!["a".into()]).unwrap()
    }

    #[test]
    fn cyclic_basics() {
        let g = cyclic(6);
        assert_eq!(g.order(), 6);
        assert_eq!(g.element_order(1), 6);
        assert_eq!(g.element_order(3), 2);
        assert_eq!(g.inv(2), 4);
        assert_eq!(g.evaluate(&Word::identity()).unwrap(), 0);
        assert_eq!(g.evaluate(&Word::new(vec![1, -1])).unwrap(), 0);
        assert!(g.evaluate(&Word::new(vec![2])).is_err());
        g.validate().unwrap();
        assert_eq!(g.pow(1, -1), 5);
    }

    #[test]
    fn words_are_shortest() {
        let g = cyclic(6);
        assert_eq!(g.element_word(5).letters(), &[-1]);
        assert_eq!(g.element_word(3).len(), 3);
    }

    #[test]
    fn rejects_non_generating_set() {
        let mut mul = Vec::new();
        for a in 0..4u32 {
            for b in 0..4u32 {
                mul.push((a + b) % 4);
            }
        }
        assert!(ConcreteGroup::from_table(mul, vec![2], vec!["a".into()]).is_err());
    }

    #[test]
    fn prime_powers() {
        assert_eq!(prime_power(64), Some((2, 6)));
        assert_eq!(prime_power(243), Some((3, 5)));
        assert_eq!(prime_power(12), None);
        assert_eq!(prime_power(1), None);
        assert!(is_prime(5) && !is_prime(9));
    }

    #[test]
    fn dump_round_trip() {
        let g = cyclic(5);
        let json = serde_json::to_string(&g.dump()).unwrap();
        let back: GroupDump = serde_json::from_str(&json).unwrap();
        assert_eq!(ConcreteGroup::from_dump(&back).unwrap(), g);
    }
}

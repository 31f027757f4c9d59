//! Todd–Coxeter coset enumeration over the trivial subgroup (HLT strategy,
//! coincidences resolved immediately through a union-find forwarding array).

use crate::error::{Error, Result};
use crate::group::ConcreteGroup;
use crate::presentation::{Presentation, Word};

pub const DEFAULT_MAX_COSETS: usize = 65536;

const NONE: u32 = u32::MAX;

/// Column of a letter: generator `i` (1-based) is column `2(i-1)`, its
/// inverse column `2(i-1)+1`.
#[inline]
fn column(letter: i32) -> usize {
    let g = letter.unsigned_abs() as usize - 1;
    2 * g + usize::from(letter < 0)
}

/// Partial action of the generators on cosets. Coset 0 is the subgroup
/// itself; a coset is live while its forwarding pointer points to itself.
#[derive(Clone, Debug)]
pub struct CosetTable {
    columns: usize,
    rows: Vec<u32>,
    forward: Vec<u32>,
    live: usize,
    max_cosets: usize,
    queue: Vec<u32>,
}

impl CosetTable {
    pub fn new(generator_count: usize, max_cosets: usize) -> Self {
        let columns = 2 * generator_count;
        CosetTable {
            columns,
            rows: vec![NONE; columns],
            forward: vec![0],
            live: 1,
            max_cosets,
            queue: Vec::new(),
        }
    }

    pub fn live_count(&self) -> usize {
        self.live
    }

    pub fn is_live(&self, c: usize) -> bool {
        self.forward[c] as usize == c
    }

    #[inline]
    pub fn get(&self, c: usize, col: usize) -> Option<usize> {
        let v = self.rows[c * self.columns + col];
        (v != NONE).then_some(v as usize)
    }

    #[inline]
    fn raw(&self, c: u32, col: usize) -> u32 {
        self.rows[c as usize * self.columns + col]
    }

    #[inline]
    fn set(&mut self, c: u32, col: usize, v: u32) {
        self.rows[c as usize * self.columns + col] = v;
    }

    fn define(&mut self, c: u32, col: usize) -> Result<()> {
        if self.live >= self.max_cosets {
            return Err(Error::BudgetExceeded {
                max_cosets: self.max_cosets,
            });
        }
        let d = self.forward.len() as u32;
        self.rows.extend(std::iter::repeat_n(NONE, self.columns));
        self.forward.push(d);
        self.live += 1;
        self.set(c, col, d);
        self.set(d, col ^ 1, c);
        Ok(())
    }

    fn rep(&mut self, c: u32) -> u32 {
        let mut root = c;
        while self.forward[root as usize] != root {
            root = self.forward[root as usize];
        }
        let mut x = c;
        while self.forward[x as usize] != root {
            let next = self.forward[x as usize];
            self.forward[x as usize] = root;
            x = next;
        }
        root
    }

    fn merge(&mut self, a: u32, b: u32) {
        let (ra, rb) = (self.rep(a), self.rep(b));
        if ra == rb {
            return;
        }
        let (keep, kill) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.forward[kill as usize] = keep;
        self.live -= 1;
        self.queue.push(kill);
    }

    fn coincidence(&mut self, a: u32, b: u32) {
        self.queue.clear();
        self.merge(a, b);
        let mut i = 0;
        while i < self.queue.len() {
            let dead = self.queue[i];
            i += 1;
            for col in 0..self.columns {
                let target = self.raw(dead, col);
                if target == NONE {
                    continue;
                }
                if self.raw(target, col ^ 1) == dead {
                    self.set(target, col ^ 1, NONE);
                }
                let mu = self.rep(dead);
                let nu = self.rep(target);
                let mu_x = self.raw(mu, col);
                if mu_x != NONE {
                    self.merge(nu, mu_x);
                } else {
                    let nu_back = self.raw(nu, col ^ 1);
                    if nu_back != NONE {
                        self.merge(mu, nu_back);
                    } else {
                        self.set(mu, col, nu);
                        self.set(nu, col ^ 1, mu);
                    }
                }
            }
        }
    }

    /// Traces `cols` around coset `c`, defining new cosets until the
    /// relator closes, and records any deduction or coincidence.
    fn scan_and_fill(&mut self, c: u32, cols: &[usize]) -> Result<()> {
        if cols.is_empty() {
            return Ok(());
        }
        let (mut f, mut b) = (c, c);
        let mut i: isize = 0;
        let mut j: isize = cols.len() as isize - 1;
        loop {
            while i <= j && self.raw(f, cols[i as usize]) != NONE {
                f = self.raw(f, cols[i as usize]);
                i += 1;
            }
            if i > j {
                if f != b {
                    self.coincidence(f, b);
                }
                return Ok(());
            }
            while j >= i && self.raw(b, cols[j as usize] ^ 1) != NONE {
                b = self.raw(b, cols[j as usize] ^ 1);
                j -= 1;
            }
            if j < i {
                self.coincidence(f, b);
                return Ok(());
            }
            if i == j {
                let col = cols[i as usize];
                self.set(f, col, b);
                self.set(b, col ^ 1, f);
                return Ok(());
            }
            self.define(f, cols[i as usize])?;
        }
    }

    fn run(&mut self, relators: &[Vec<usize>]) -> Result<()> {
        let mut c = 0usize;
        while c < self.forward.len() {
            for r in relators {
                if !self.is_live(c) {
                    break;
                }
                self.scan_and_fill(c as u32, r)?;
            }
            if self.is_live(c) {
                for col in 0..self.columns {
                    if self.raw(c as u32, col) == NONE {
                        self.define(c as u32, col)?;
                    }
                }
            }
            c += 1;
        }
        Ok(())
    }
}

fn cyclically_reduce(w: &Word) -> Vec<i32> {
    let mut v = w.free_reduce().letters().to_vec();
    while v.len() >= 2 && v[0] == -v[v.len() - 1] {
        v.pop();
        v.remove(0);
    }
    v
}

/// Enumerates the cosets of the trivial subgroup, producing the full
/// multiplication table. Elements are numbered in breadth-first order from
/// the identity, so the result is deterministic for a fixed presentation.
pub fn enumerate(p: &Presentation, max_cosets: usize) -> Result<ConcreteGroup> {
    let k = p.generator_count();
    if k == 0 {
        return Err(Error::EmptyPresentation);
    }
    let relators: Vec<Vec<usize>> = p
        .relators()
        .iter()
        .map(cyclically_reduce)
        .filter(|r| !r.is_empty())
        .map(|r| r.into_iter().map(column).collect())
        .collect();
    let mut table = CosetTable::new(k, max_cosets.max(1));
    table.run(&relators)?;

    // Renumber live cosets breadth-first from coset 0.
    let total = table.forward.len();
    let mut number = vec![NONE; total];
    let mut order_list = vec![0u32];
    number[0] = 0;
    let mut tree: Vec<(u32, usize)> = vec![(0, 0)];
    let mut head = 0;
    while head < order_list.len() {
        let c = order_list[head];
        head += 1;
        for col in 0..table.columns {
            let d = table.raw(c, col);
            debug_assert!(d != NONE && table.is_live(d as usize));
            if number[d as usize] == NONE {
                number[d as usize] = order_list.len() as u32;
                tree.push((number[c as usize], col));
                order_list.push(d);
            }
        }
    }
    let n = order_list.len();
    let mut act = vec![0u32; table.columns * n];
    for (i, &c) in order_list.iter().enumerate() {
        for col in 0..table.columns {
            act[col * n + i] = number[table.raw(c, col) as usize];
        }
    }
    let mut mul = vec![0u32; n * n];
    for x in 0..n {
        mul[x * n] = x as u32;
        for y in 1..n {
            let (parent, col) = tree[y];
            let prev = mul[x * n + parent as usize] as usize;
            mul[x * n + y] = act[col * n + prev];
        }
    }
    let gens = (0..k).map(|i| act[2 * i * n] as usize).collect();
    ConcreteGroup::from_table(mul, gens, p.generator_names().to_vec())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::parse_presentation;

    fn order_of(text: &str) -> usize {
        enumerate(&parse_presentation(text).unwrap(), DEFAULT_MAX_COSETS)
            .unwrap()
            .order()
    }

    #[test]
    fn small_orders() {
        assert_eq!(order_of("gens a; rels a^1=1;"), 1);
        assert_eq!(order_of("gens a; rels a^7=1;"), 7);
        assert_eq!(order_of("gens a,b; rels a^4=1, b^2=1, a^b=a^-1;"), 8);
        assert_eq!(order_of("gens a,b; rels a^4=1, b^2=a^2, a^b=a^-1;"), 8);
        assert_eq!(order_of("gens a,b; rels a^3=b^2=1, (a b)^2=1;"), 6);
        assert_eq!(order_of("gens a,b,c; rels a^2=b^3=c^5=1, [a,b]=[a,c]=[b,c]=1;"), 30);
    }

    #[test]
    fn relators_hold_and_table_is_valid() {
        let p = parse_presentation("gens a,b; rels a^8=1, b^2=a^4, a^b=a^-1;").unwrap();
        let g = enumerate(&p, DEFAULT_MAX_COSETS).unwrap();
        assert_eq!(g.order(), 16);
        g.validate().unwrap();
        for r in p.relators() {
            assert_eq!(g.evaluate(r).unwrap(), 0);
        }
    }

    #[test]
    fn budget_and_empty_errors() {
        let free = parse_presentation("gens a,b; rels [a,b]=1;").unwrap();
        assert_eq!(
            enumerate(&free, 100).unwrap_err(),
            Error::BudgetExceeded { max_cosets: 100 }
        );
        let empty = Presentation::new(vec![], vec![]).unwrap();
        assert_eq!(enumerate(&empty, 10).unwrap_err(), Error::EmptyPresentation);
    }

    #[test]
    fn deterministic_tables() {
        let p = parse_presentation("gens a,b; rels a^9=b^9=1, c:=[a,b], c^3=1, [c,a]=b^-3, [c,b]=a^3;")
            .unwrap();
        let g1 = enumerate(&p, DEFAULT_MAX_COSETS).unwrap();
        let g2 = enumerate(&p, DEFAULT_MAX_COSETS).unwrap();
        assert_eq!(g1, g2);
        assert_eq!(g1.order(), 729);
    }
}

//! Base and strong generating set, built by deterministic incremental
//! Schreier-Sims.
//!
//! Each level keeps a Schreier tree over its basic orbit. Tree labels are never
//! rewritten once assigned, so a Schreier generator that has been sifted
//! successfully stays valid and is never re-checked.

use alloc::vec::Vec;

use crate::perm::{Permutation, Point};

const UNSEEN: u32 = u32::MAX;
const ROOT: u32 = u32::MAX - 1;

#[derive(Clone, Debug)]
pub(crate) struct Level {
    pub(crate) base_point: Point,
    /// Indices into `StabChain::strong` of the generators fixing all earlier base points.
    pub(crate) gens: Vec<usize>,
    /// Basic orbit in discovery order.
    pub(crate) orbit: Vec<Point>,
    /// For each point of the domain: `UNSEEN`, `ROOT`, or the strong generator
    /// index that carries the parent to this point.
    tree: Vec<u32>,
    /// For each orbit position, the number of level generators already checked.
    checked: Vec<usize>,
}

impl Level {
    fn new(base_point: Point, degree: usize) -> Self {
        let mut tree = alloc::vec![UNSEEN; degree];
        tree[base_point as usize] = ROOT;
        Level {
            base_point,
            gens: Vec::new(),
            orbit: alloc::vec![base_point],
            tree,
            checked: alloc::vec![0],
        }
    }

    #[inline]
    pub(crate) fn in_orbit(&self, x: Point) -> bool {
        self.tree[x as usize] != UNSEEN
    }

    /// Extends the orbit under the current generators. Existing labels are kept.
    fn extend_orbit(&mut self, strong: &[Permutation]) {
        let mut i = 0;
        while i < self.orbit.len() {
            let x = self.orbit[i];
            for &s in &self.gens {
                let y = strong[s].image(x);
                if self.tree[y as usize] == UNSEEN {
                    self.tree[y as usize] = s as u32;
                    self.orbit.push(y);
                    self.checked.push(0);
                }
            }
            i += 1;
        }
    }
}

#[derive(Clone, Debug)]
pub(crate) struct StabChain {
    pub(crate) degree: usize,
    pub(crate) strong: Vec<Permutation>,
    strong_inv: Vec<Permutation>,
    pub(crate) levels: Vec<Level>,
    /// Known upper bound on the group order; construction stops once reached.
    order_bound: Option<u128>,
}

impl StabChain {
    pub(crate) fn new(degree: usize, base_prefix: &[Point], order_bound: Option<u128>) -> Self {
        let mut chain = StabChain {
            degree,
            strong: Vec::new(),
            strong_inv: Vec::new(),
            levels: Vec::new(),
            order_bound,
        };
        for &b in base_prefix {
            if !chain.levels.iter().any(|l| l.base_point == b) {
                chain.levels.push(Level::new(b, degree));
            }
        }
        chain
    }

    pub(crate) fn base(&self) -> Vec<Point> {
        self.levels.iter().map(|l| l.base_point).collect()
    }

    pub(crate) fn order(&self) -> u128 {
        self.levels
            .iter()
            .fold(1u128, |acc, l| acc.saturating_mul(l.orbit.len() as u128))
    }

    fn bound_reached(&self) -> bool {
        matches!(self.order_bound, Some(b) if self.order() >= b)
    }

    /// Coset representative carrying the base point of `level` to `x`.
    pub(crate) fn transversal(&self, level: usize, x: Point) -> Permutation {
        let lvl = &self.levels[level];
        let mut labels = Vec::new();
        let mut y = x;
        while y != lvl.base_point {
            let s = lvl.tree[y as usize] as usize;
            labels.push(s);
            y = self.strong_inv[s].image(y);
        }
        let mut u = Permutation::identity(self.degree);
        for &s in labels.iter().rev() {
            u.mul_assign_unchecked(&self.strong[s]);
        }
        u
    }

    /// Strips `h` through the levels starting at `from`. Returns the residue and
    /// the level at which sifting stopped (`levels.len()` if it went through).
    pub(crate) fn sift_from(&self, mut h: Permutation, from: usize) -> (Permutation, usize) {
        for (l, lvl) in self.levels.iter().enumerate().skip(from) {
            let mut beta = h.image(lvl.base_point);
            if !lvl.in_orbit(beta) {
                return (h, l);
            }
            while beta != lvl.base_point {
                let s = lvl.tree[beta as usize] as usize;
                h.mul_assign_unchecked(&self.strong_inv[s]);
                beta = self.strong_inv[s].image(beta);
            }
        }
        let n = self.levels.len();
        (h, n)
    }

    pub(crate) fn contains(&self, x: &Permutation) -> bool {
        let (r, l) = self.sift_from(x.clone(), 0);
        l == self.levels.len() && r.is_identity()
    }

    /// Adds generators and completes the chain.
    pub(crate) fn extend(&mut self, gens: &[Permutation]) {
        let mut restart: Option<usize> = None;
        for g in gens {
            if g.is_identity() || self.bound_reached() {
                continue;
            }
            if let Some(level) = self.insert_strong(g.clone(), 0) {
                restart = Some(restart.map_or(level, |r: usize| r.max(level)));
            }
        }
        if let Some(top) = restart {
            self.complete(top);
        }
    }

    /// Adds a nontrivial element `g` fixing the first `from` base points as a
    /// strong generator, extending the base if needed. Returns the deepest
    /// level whose generating set changed, or `None` if `g` was already a member.
    fn insert_strong(&mut self, g: Permutation, from: usize) -> Option<usize> {
        let (residue, drop) = self.sift_from(g, from);
        if drop == self.levels.len() && residue.is_identity() {
            return None;
        }
        Some(self.add_strong(residue, from, drop))
    }

    /// `residue` fixes base points `0..drop` and is nontrivial.
    fn add_strong(&mut self, residue: Permutation, from: usize, drop: usize) -> usize {
        if drop == self.levels.len() {
            let moved = residue
                .smallest_moved_point()
                .expect("nontrivial residue moves a point");
            self.levels.push(Level::new(moved, self.degree));
        }
        let idx = self.strong.len();
        self.strong_inv.push(residue.inverse());
        self.strong.push(residue);
        for l in from..=drop {
            self.levels[l].gens.push(idx);
            let (levels, strong) = (&mut self.levels, &self.strong);
            levels[l].extend_orbit(strong);
        }
        drop
    }

    /// Schreier-Sims main loop, starting at level `top` and working upwards.
    fn complete(&mut self, top: usize) {
        let mut i = top as isize;
        'outer: while i >= 0 {
            if self.bound_reached() {
                return;
            }
            let li = i as usize;
            let mut oi = 0;
            while oi < self.levels[li].orbit.len() {
                while self.levels[li].checked[oi] < self.levels[li].gens.len() {
                    let gi = self.levels[li].checked[oi];
                    let beta = self.levels[li].orbit[oi];
                    let x = self.levels[li].gens[gi];
                    let mut h = self.transversal(li, beta);
                    h.mul_assign_unchecked(&self.strong[x]);
                    // Sifting from level `li` divides by the representative of beta^x first.
                    let (residue, drop) = self.sift_from(h, li);
                    if drop < self.levels.len() || !residue.is_identity() {
                        let changed = self.add_strong(residue, li + 1, drop);
                        i = changed as isize;
                        continue 'outer;
                    }
                    self.levels[li].checked[oi] += 1;
                }
                oi += 1;
            }
            i -= 1;
        }
    }

    /// Generators of the pointwise stabilizer of the first `depth` base points.
    pub(crate) fn stabilizer_generators(&self, depth: usize) -> Vec<Permutation> {
        if depth >= self.levels.len() {
            return Vec::new();
        }
        self.levels[depth]
            .gens
            .iter()
            .map(|&s| self.strong[s].clone())
            .collect()
    }

    /// Order of the pointwise stabilizer of the first `depth` base points.
    pub(crate) fn stabilizer_order(&self, depth: usize) -> u128 {
        self.levels
            .iter()
            .skip(depth)
            .fold(1u128, |acc, l| acc.saturating_mul(l.orbit.len() as u128))
    }
}

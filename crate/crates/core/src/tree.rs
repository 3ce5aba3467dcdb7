//! Flat, array-backed storage for search trees and forests.
//!
//! Coordinates live in one contiguous buffer so that nearest-neighbour
//! queries are linear scans over memory. Removed nodes are tombstoned and
//! reclaimed by [`NodeStore::compact`].

use crate::space::State;

pub const NO_PARENT: usize = usize::MAX;

#[derive(Debug, Clone)]
pub struct NodeStore {
    dim: usize,
    coords: Vec<f64>,
    times: Vec<f64>,
    parent: Vec<usize>,
    children: Vec<Vec<usize>>,
    root: Vec<usize>,
    root_time: Vec<f64>,
    alive: Vec<bool>,
    serial: Vec<u64>,
    next_serial: u64,
    live: usize,
}

impl NodeStore {
    pub fn new(dim: usize) -> Self {
        Self {
            dim,
            coords: Vec::new(),
            times: Vec::new(),
            parent: Vec::new(),
            children: Vec::new(),
            root: Vec::new(),
            root_time: Vec::new(),
            alive: Vec::new(),
            serial: Vec::new(),
            next_serial: 0,
            live: 0,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Number of slots, dead ones included. Valid indices are `0..capacity()`.
    pub fn capacity(&self) -> usize {
        self.times.len()
    }

    /// Number of live nodes.
    pub fn len(&self) -> usize {
        self.live
    }

    pub fn is_empty(&self) -> bool {
        self.live == 0
    }

    #[inline]
    pub fn q(&self, i: usize) -> &[f64] {
        &self.coords[i * self.dim..(i + 1) * self.dim]
    }

    #[inline]
    pub fn t(&self, i: usize) -> f64 {
        self.times[i]
    }

    pub fn state(&self, i: usize) -> State {
        State::new(self.q(i).to_vec(), self.t(i))
    }

    #[inline]
    pub fn is_alive(&self, i: usize) -> bool {
        self.alive[i]
    }

    pub fn parent(&self, i: usize) -> Option<usize> {
        match self.parent[i] {
            NO_PARENT => None,
            p => Some(p),
        }
    }

    pub fn children(&self, i: usize) -> &[usize] {
        &self.children[i]
    }

    pub fn root(&self, i: usize) -> usize {
        self.root[i]
    }

    /// Time of the root of the tree containing `i`.
    #[inline]
    pub fn root_time(&self, i: usize) -> f64 {
        self.root_time[i]
    }

    /// Identifier unique over the lifetime of the store; survives compaction.
    pub fn serial(&self, i: usize) -> u64 {
        self.serial[i]
    }

    pub fn alive_indices(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.capacity()).filter(move |&i| self.alive[i])
    }

    fn push(&mut self, q: &[f64], t: f64, parent: usize, root: usize, root_time: f64) -> usize {
        debug_assert_eq!(q.len(), self.dim);
        let i = self.capacity();
        self.coords.extend_from_slice(q);
        self.times.push(t);
        self.parent.push(parent);
        self.children.push(Vec::new());
        self.root.push(root);
        self.root_time.push(root_time);
        self.alive.push(true);
        self.serial.push(self.next_serial);
        self.next_serial += 1;
        self.live += 1;
        i
    }

    pub fn add_root(&mut self, q: &[f64], t: f64) -> usize {
        let i = self.capacity();
        self.push(q, t, NO_PARENT, i, t)
    }

    pub fn add_child(&mut self, parent: usize, q: &[f64], t: f64) -> usize {
        debug_assert!(self.alive[parent]);
        let i = self.push(q, t, parent, self.root[parent], self.root_time[parent]);
        self.children[parent].push(i);
        i
    }

    /// Moves `child` (with its subtree) under `new_parent`; the subtree adopts
    /// the root of `new_parent`.
    pub fn reparent(&mut self, child: usize, new_parent: usize) {
        if let Some(old) = self.parent(child) {
            self.children[old].retain(|&c| c != child);
        }
        self.parent[child] = new_parent;
        self.children[new_parent].push(child);
        let (root, root_time) = (self.root[new_parent], self.root_time[new_parent]);
        let mut stack = vec![child];
        while let Some(n) = stack.pop() {
            self.root[n] = root;
            self.root_time[n] = root_time;
            stack.extend_from_slice(&self.children[n]);
        }
    }

    /// Indices from `i` up to its root, `i` first.
    pub fn branch(&self, i: usize) -> Vec<usize> {
        let mut out = vec![i];
        let mut cur = i;
        while let Some(p) = self.parent(cur) {
            out.push(p);
            cur = p;
        }
        out
    }

    /// Removes every live node for which `remove` holds, together with its
    /// descendants. Returns the serials of the removed nodes.
    pub fn prune<F: Fn(&Self, usize) -> bool>(&mut self, remove: F) -> Vec<u64> {
        let mut stack: Vec<usize> = self.alive_indices().filter(|&i| remove(self, i)).collect();
        let mut removed = Vec::new();
        while let Some(n) = stack.pop() {
            if !self.alive[n] {
                continue;
            }
            self.alive[n] = false;
            self.live -= 1;
            removed.push(self.serial[n]);
            stack.extend_from_slice(&self.children[n]);
            if let Some(p) = self.parent(n) {
                if self.alive[p] {
                    self.children[p].retain(|&c| c != n);
                }
            }
        }
        removed
    }

    /// Drops tombstoned slots. Invalidates all indices held by callers.
    pub fn compact(&mut self) {
        if self.live == self.capacity() {
            return;
        }
        let mut remap = vec![NO_PARENT; self.capacity()];
        let mut next = 0;
        for (i, slot) in remap.iter_mut().enumerate() {
            if self.alive[i] {
                *slot = next;
                next += 1;
            }
        }
        let dim = self.dim;
        let mut out = NodeStore::new(dim);
        out.next_serial = self.next_serial;
        for i in 0..self.capacity() {
            if !self.alive[i] {
                continue;
            }
            out.coords.extend_from_slice(self.q(i));
            out.times.push(self.times[i]);
            out.parent.push(match self.parent[i] {
                NO_PARENT => NO_PARENT,
                p => remap[p],
            });
            out.children
                .push(self.children[i].iter().map(|&c| remap[c]).collect());
            out.root.push(remap[self.root[i]]);
            out.root_time.push(self.root_time[i]);
            out.alive.push(true);
            out.serial.push(self.serial[i]);
            out.live += 1;
        }
        *self = out;
    }

    /// Compacts once more than half of the slots are dead.
    pub fn maybe_compact(&mut self) {
        let dead = self.capacity() - self.live;
        if dead > 1024 && dead > self.live {
            self.compact();
        }
    }

    /// Live node minimising `dist`, ignoring infinite distances.
    #[inline]
    pub fn nearest<F: Fn(&[f64], f64) -> f64>(&self, dist: F) -> Option<(usize, f64)> {
        let mut best: Option<(usize, f64)> = None;
        for i in 0..self.capacity() {
            if !self.alive[i] {
                continue;
            }
            let d = dist(self.q(i), self.times[i]);
            if d.is_finite() && best.is_none_or(|(_, b)| d < b) {
                best = Some((i, d));
            }
        }
        best
    }

    /// Up to `k` live nodes with the smallest finite `dist`, closest first.
    pub fn k_nearest<F: Fn(&[f64], f64) -> f64>(&self, k: usize, dist: F) -> Vec<(usize, f64)> {
        let mut found: Vec<(usize, f64)> = (0..self.capacity())
            .filter(|&i| self.alive[i])
            .filter_map(|i| {
                let d = dist(self.q(i), self.times[i]);
                d.is_finite().then_some((i, d))
            })
            .collect();
        let by_distance = |a: &(usize, f64), b: &(usize, f64)| a.1.total_cmp(&b.1).then(a.0.cmp(&b.0));
        if found.len() > k {
            if k == 0 {
                return Vec::new();
            }
            found.select_nth_unstable_by(k - 1, by_distance);
            found.truncate(k);
        }
        found.sort_by(by_distance);
        found
    }

    /// Live nodes with finite `dist` not exceeding `radius`, closest first.
    pub fn within<F: Fn(&[f64], f64) -> f64>(&self, radius: f64, dist: F) -> Vec<(usize, f64)> {
        let mut found: Vec<(usize, f64)> = self
            .alive_indices()
            .filter_map(|i| {
                let d = dist(self.q(i), self.times[i]);
                (d <= radius).then_some((i, d))
            })
            .collect();
        found.sort_by(|a, b| a.1.total_cmp(&b.1).then(a.0.cmp(&b.0)));
        found
    }
}

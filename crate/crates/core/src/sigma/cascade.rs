//! Fractional cascading over the breakpoint lists of a complete binary tree.
//!
//! Every node keeps an augmented catalog: its own breakpoints merged with
//! every other entry of each child's augmented catalog. Each catalog entry
//! records how many of the node's own breakpoints precede it and, for both
//! children, where the same key would be inserted in the child's catalog. One
//! binary search at the root then yields the position at every node along a
//! root-to-leaf path with O(1) extra work per level.

use crate::scalar::Scalar;

#[derive(Debug, Clone, Default)]
pub struct Cascade<T> {
    /// Per heap node: start and length of its catalog in `keys`.
    span: Vec<(u32, u32)>,
    /// Per heap node: start of its `len + 1` auxiliary entries.
    aux: Vec<u32>,
    keys: Vec<T>,
    own_before: Vec<u32>,
    to_left: Vec<u32>,
    to_right: Vec<u32>,
}

impl<T: Scalar> Cascade<T> {
    /// Builds catalogs for a heap-ordered tree over `0..m`, where
    /// `own(node)` yields that node's sorted breakpoints.
    pub fn build<'a, F>(m: usize, own: F) -> Self
    where
        F: Fn(usize) -> &'a [T],
        T: 'a,
    {
        let nodes = 4 * m.max(1);
        let mut c = Cascade {
            span: vec![(0, 0); nodes],
            aux: vec![0; nodes],
            ..Default::default()
        };
        if m > 0 {
            c.build_node(1, 0, m, &own);
        }
        c
    }

    fn catalog(&self, node: usize) -> &[T] {
        let (s, l) = self.span[node];
        &self.keys[s as usize..(s + l) as usize]
    }

    fn build_node<'a, F>(&mut self, node: usize, lo: usize, hi: usize, own: &F)
    where
        F: Fn(usize) -> &'a [T],
        T: 'a,
    {
        let mine = own(node);
        let (left, right) = (2 * node, 2 * node + 1);
        let leaf = hi - lo == 1;
        let mut merged: Vec<(T, bool)>;
        if leaf {
            merged = mine.iter().map(|&k| (k, true)).collect();
        } else {
            let mid = (lo + hi) / 2;
            self.build_node(left, lo, mid, own);
            self.build_node(right, mid, hi, own);
            let sample = |cat: &[T]| cat.iter().skip(1).step_by(2).copied().collect::<Vec<T>>();
            let (sl, sr) = (sample(self.catalog(left)), sample(self.catalog(right)));
            let children = merge_sorted(&sl, &sr);
            merged = Vec::with_capacity(children.len() + mine.len());
            let (mut a, mut b) = (0, 0);
            while a < mine.len() || b < children.len() {
                if b == children.len() || (a < mine.len() && mine[a] <= children[b]) {
                    merged.push((mine[a], true));
                    a += 1;
                } else {
                    merged.push((children[b], false));
                    b += 1;
                }
            }
        }

        let start = self.keys.len() as u32;
        self.span[node] = (start, merged.len() as u32);
        self.aux[node] = self.own_before.len() as u32;
        let mut count = 0u32;
        for &(k, is_own) in &merged {
            self.own_before.push(count);
            count += is_own as u32;
            self.keys.push(k);
        }
        self.own_before.push(count);

        if leaf {
            let pad = merged.len() + 1;
            self.to_left.extend(std::iter::repeat_n(0, pad));
            self.to_right.extend(std::iter::repeat_n(0, pad));
        } else {
            let keys: Vec<T> = merged.iter().map(|e| e.0).collect();
            let bl = bridges(&keys, self.catalog(left));
            let br = bridges(&keys, self.catalog(right));
            self.to_left.extend(bl);
            self.to_right.extend(br);
        }
    }

    /// Catalog position (lower bound) of `x` at the root.
    pub fn root_position(&self, x: T) -> usize {
        self.catalog(1).partition_point(|&k| k < x)
    }

    /// Number of the node's own breakpoints strictly below `x`, i.e. the
    /// index of the envelope piece containing `x`.
    pub fn piece(&self, node: usize, pos: usize) -> usize {
        self.own_before[self.aux[node] as usize + pos] as usize
    }

    /// Follows the bridge from `node` (where `x` sits at `pos`) into `child`.
    pub fn descend(&self, node: usize, pos: usize, child: usize, x: T) -> usize {
        let bridge = if child == 2 * node { &self.to_left } else { &self.to_right };
        let mut k = bridge[self.aux[node] as usize + pos] as usize;
        let cat = self.catalog(child);
        while k > 0 && cat[k - 1] >= x {
            k -= 1;
        }
        k
    }

    /// Total catalog size over all nodes.
    pub fn total_len(&self) -> usize {
        self.keys.len()
    }
}

fn merge_sorted<T: Scalar>(a: &[T], b: &[T]) -> Vec<T> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i] <= b[j]) {
            out.push(a[i]);
            i += 1;
        } else {
            out.push(b[j]);
            j += 1;
        }
    }
    out
}

/// For each key (plus one past the end), the lower bound of that key in `child`.
fn bridges<T: Scalar>(keys: &[T], child: &[T]) -> Vec<u32> {
    let mut out = Vec::with_capacity(keys.len() + 1);
    let mut j = 0;
    for &k in keys {
        while j < child.len() && child[j] < k {
            j += 1;
        }
        out.push(j as u32);
    }
    out.push(child.len() as u32);
    out
}

//! Bounding-volume hierarchy over triangles.
//!
//! Boxes are `f64` and inflated, so a query may return extra candidates but
//! never drops a triangle that an exact test would accept. Callers always
//! confirm candidates exactly, so the tree never changes any result.

use crate::exactgeom::{Point3, Triangle};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Aabb {
    pub min: [f64; 3],
    pub max: [f64; 3],
}

const REL_SLACK: f64 = 1e-9;

impl Aabb {
    pub fn empty() -> Self {
        Self {
            min: [f64::INFINITY; 3],
            max: [f64::NEG_INFINITY; 3],
        }
    }

    /// Smallest inflated box around exact points.
    pub fn around<'a>(points: impl IntoIterator<Item = &'a Point3>) -> Self {
        let mut b = Self::empty();
        for p in points {
            let c = p.to_f64();
            for k in 0..3 {
                b.min[k] = b.min[k].min(c[k]);
                b.max[k] = b.max[k].max(c[k]);
            }
        }
        b.inflated()
    }

    fn inflated(mut self) -> Self {
        for k in 0..3 {
            let slack = REL_SLACK * (1.0 + self.min[k].abs().max(self.max[k].abs()));
            self.min[k] -= slack;
            self.max[k] += slack;
        }
        self
    }

    pub fn union(&self, o: &Aabb) -> Aabb {
        let mut b = *self;
        for k in 0..3 {
            b.min[k] = b.min[k].min(o.min[k]);
            b.max[k] = b.max[k].max(o.max[k]);
        }
        b
    }

    pub fn overlaps(&self, o: &Aabb) -> bool {
        (0..3).all(|k| self.min[k] <= o.max[k] && o.min[k] <= self.max[k])
    }

    fn centroid(&self, k: usize) -> f64 {
        0.5 * (self.min[k] + self.max[k])
    }

    /// Slab test for the half-line `origin + t·dir`, `t >= 0`.
    pub fn hit_by_ray(&self, origin: &[f64; 3], dir: &[f64; 3]) -> bool {
        let mut t0 = 0.0f64;
        let mut t1 = f64::INFINITY;
        for k in 0..3 {
            if dir[k] == 0.0 {
                if origin[k] < self.min[k] || origin[k] > self.max[k] {
                    return false;
                }
                continue;
            }
            let inv = 1.0 / dir[k];
            let (mut a, mut b) = ((self.min[k] - origin[k]) * inv, (self.max[k] - origin[k]) * inv);
            if a > b {
                std::mem::swap(&mut a, &mut b);
            }
            // Widen the interval slightly against rounding in the products.
            let pad = 1e-9 * (1.0 + a.abs().max(b.abs()));
            t0 = t0.max(a - pad);
            t1 = t1.min(b + pad);
            if t0 > t1 {
                return false;
            }
        }
        true
    }
}

#[derive(Clone, Debug)]
enum Node {
    Leaf { bounds: Aabb, items: Vec<usize> },
    Inner { bounds: Aabb, left: usize, right: usize },
}

impl Node {
    fn bounds(&self) -> &Aabb {
        match self {
            Node::Leaf { bounds, .. } | Node::Inner { bounds, .. } => bounds,
        }
    }
}

const LEAF_SIZE: usize = 4;

#[derive(Clone, Debug)]
pub struct Bvh {
    nodes: Vec<Node>,
    boxes: Vec<Aabb>,
}

impl Bvh {
    pub fn build(triangles: &[Triangle]) -> Self {
        let boxes: Vec<Aabb> = triangles.iter().map(|t| Aabb::around(t.iter())).collect();
        let mut bvh = Bvh {
            nodes: Vec::new(),
            boxes,
        };
        if !bvh.boxes.is_empty() {
            let ids: Vec<usize> = (0..bvh.boxes.len()).collect();
            bvh.build_node(ids);
        }
        bvh
    }

    fn build_node(&mut self, mut ids: Vec<usize>) -> usize {
        let bounds = ids.iter().fold(Aabb::empty(), |b, &i| b.union(&self.boxes[i]));
        if ids.len() <= LEAF_SIZE {
            self.nodes.push(Node::Leaf { bounds, items: ids });
            return self.nodes.len() - 1;
        }
        let axis = (0..3)
            .max_by(|&a, &b| {
                let ea = bounds.max[a] - bounds.min[a];
                let eb = bounds.max[b] - bounds.min[b];
                ea.total_cmp(&eb)
            })
            .unwrap_or(0);
        ids.sort_by(|&a, &b| {
            self.boxes[a]
                .centroid(axis)
                .total_cmp(&self.boxes[b].centroid(axis))
                .then(a.cmp(&b))
        });
        let right_ids = ids.split_off(ids.len() / 2);
        let slot = self.nodes.len();
        self.nodes.push(Node::Leaf { bounds, items: vec![] });
        let left = self.build_node(ids);
        let right = self.build_node(right_ids);
        self.nodes[slot] = Node::Inner { bounds, left, right };
        slot
    }

    pub fn len(&self) -> usize {
        self.boxes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.boxes.is_empty()
    }

    pub fn bounds(&self, item: usize) -> &Aabb {
        &self.boxes[item]
    }

    fn collect(&self, accept: impl Fn(&Aabb) -> bool) -> Vec<usize> {
        let mut out = Vec::new();
        if self.nodes.is_empty() {
            return out;
        }
        let mut stack = vec![0usize];
        while let Some(n) = stack.pop() {
            let node = &self.nodes[n];
            if !accept(node.bounds()) {
                continue;
            }
            match node {
                Node::Leaf { items, .. } => out.extend(items.iter().copied().filter(|&i| accept(&self.boxes[i]))),
                Node::Inner { left, right, .. } => stack.extend([*right, *left]),
            }
        }
        out.sort_unstable();
        out
    }

    /// Items whose box overlaps `query`, in increasing id order.
    pub fn query(&self, query: &Aabb) -> Vec<usize> {
        self.collect(|b| b.overlaps(query))
    }

    pub fn query_ray(&self, origin: &Point3, dir: &Point3) -> Vec<usize> {
        let (o, d) = (origin.to_f64(), dir.to_f64());
        self.collect(|b| b.hit_by_ray(&o, &d))
    }

    /// All unordered pairs `(i, j)`, `i < j`, whose boxes overlap.
    pub fn overlapping_pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.boxes.len() {
            for j in self.query(&self.boxes[i]) {
                if j > i {
                    out.push((i, j));
                }
            }
        }
        out
    }
}

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::limits::Limits;

/// A permutation of `0..n`, stored as its image vector.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation { images: (0..n).collect() }
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || seen[i] {
                return Err(Error::InvalidArgument("not a bijection on 0..n".into()));
            }
            seen[i] = true;
        }
        Ok(Permutation { images })
    }

    /// Builds a permutation of the vertices of `g` from cycles written in
    /// vertex labels. Labels not mentioned are fixed.
    pub fn from_label_cycles(g: &Graph, cycles: &[&[&str]]) -> Result<Self> {
        let mut images: Vec<usize> = (0..g.order()).collect();
        let mut moved = vec![false; g.order()];
        for cycle in cycles {
            for k in 0..cycle.len() {
                let from = g.require_vertex(cycle[k])?;
                let to = g.require_vertex(cycle[(k + 1) % cycle.len()])?;
                if moved[from] {
                    return Err(Error::InvalidArgument(format!(
                        "label {:?} appears in two cycles",
                        cycle[k]
                    )));
                }
                moved[from] = true;
                images[from] = to;
            }
        }
        Permutation::from_images(images)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i == j)
    }

    /// Composition `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.degree(), other.degree());
        Permutation {
            images: other.images.iter().map(|&i| self.images[i]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.degree()];
        for (i, &j) in self.images.iter().enumerate() {
            images[j] = i;
        }
        Permutation { images }
    }

    pub fn is_automorphism_of(&self, g: &Graph) -> bool {
        if self.degree() != g.order() {
            return false;
        }
        g.edges()
            .iter()
            .all(|&(u, v)| g.has_edge(self.images[u], self.images[v]))
    }

    /// Cycle notation over the given labels, fixed points omitted;
    /// the identity prints as `()`.
    pub fn cycle_string(&self, labels: &[String]) -> String {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = String::new();
        for start in 0..n {
            if seen[start] || self.images[start] == start {
                continue;
            }
            out.push('(');
            let mut v = start;
            let mut first = true;
            loop {
                seen[v] = true;
                if !first {
                    out.push(' ');
                }
                out.push_str(&labels[v]);
                first = false;
                v = self.images[v];
                if v == start {
                    break;
                }
            }
            out.push(')');
        }
        if out.is_empty() {
            out.push_str("()");
        }
        out
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation({:?})", self.images)
    }
}

/// A permutation group given by its full element set, kept sorted so
/// iteration order is canonical.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PermGroup {
    degree: usize,
    elements: Vec<Permutation>,
}

impl PermGroup {
    pub fn trivial(degree: usize) -> Self {
        PermGroup {
            degree,
            elements: vec![Permutation::identity(degree)],
        }
    }

    /// Closure of the generating set under composition. The closure of a
    /// finite set of bijections already contains inverses and identity.
    pub fn closure(degree: usize, generators: &[Permutation], limits: &Limits) -> Result<Self> {
        for g in generators {
            if g.degree() != degree {
                return Err(Error::ArityMismatch(format!(
                    "generator degree {} does not match {}",
                    g.degree(),
                    degree
                )));
            }
        }
        let mut elements: BTreeSet<Permutation> = BTreeSet::new();
        elements.insert(Permutation::identity(degree));
        let mut frontier: Vec<Permutation> = vec![Permutation::identity(degree)];
        while let Some(p) = frontier.pop() {
            for g in generators {
                let q = g.compose(&p);
                if !elements.contains(&q) {
                    if elements.len() >= limits.max_group_order {
                        return Err(Error::Overflow {
                            what: "group closure".into(),
                            limit: limits.max_group_order,
                        });
                    }
                    elements.insert(q.clone());
                    frontier.push(q);
                }
            }
        }
        Ok(PermGroup {
            degree,
            elements: elements.into_iter().collect(),
        })
    }

    /// Wraps an explicit element list. Sorted, deduplicated; closure is
    /// the caller's responsibility (spot-checked in debug builds for
    /// groups small enough to afford the quadratic sweep).
    pub fn from_elements(degree: usize, mut elements: Vec<Permutation>) -> Self {
        if elements.is_empty() {
            elements.push(Permutation::identity(degree));
        }
        elements.sort();
        elements.dedup();
        let g = PermGroup { degree, elements };
        debug_assert!(g.order() > 1024 || g.is_closed());
        g
    }

    pub fn is_closed(&self) -> bool {
        self.elements.iter().all(|a| {
            self.contains(&a.inverse())
                && self.elements.iter().all(|b| self.contains(&a.compose(b)))
        })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    /// Elements in canonical lexicographic order (by image vector).
    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        self.elements.binary_search(p).is_ok()
    }

    pub fn is_subgroup_of(&self, other: &PermGroup) -> bool {
        self.degree == other.degree && self.elements.iter().all(|p| other.contains(p))
    }

    pub fn is_normal_in(&self, ambient: &PermGroup) -> bool {
        ambient.elements.iter().all(|g| {
            let gi = g.inverse();
            self.elements
                .iter()
                .all(|n| self.contains(&g.compose(n).compose(&gi)))
        })
    }

    pub fn intersection(&self, other: &PermGroup) -> PermGroup {
        let elements: Vec<Permutation> = self
            .elements
            .iter()
            .filter(|p| other.contains(p))
            .cloned()
            .collect();
        PermGroup::from_elements(self.degree, elements)
    }

    /// A small generating set: greedily add elements outside the closure
    /// of the set so far. Deterministic.
    pub fn small_generating_set(&self, limits: &Limits) -> Vec<Permutation> {
        let mut gens: Vec<Permutation> = Vec::new();
        let mut have = PermGroup::trivial(self.degree);
        for p in &self.elements {
            if !have.contains(p) {
                gens.push(p.clone());
                have = PermGroup::closure(self.degree, &gens, limits)
                    .expect("closure of a subgroup cannot overflow");
            }
            if have.order() == self.order() {
                break;
            }
        }
        gens
    }
}

/// True iff `whole = normal ⋊ complement`: `normal` is normal in `whole`,
/// the two subgroups intersect trivially and their orders multiply up.
pub fn check_semidirect(
    whole: &PermGroup,
    normal: &PermGroup,
    complement: &PermGroup,
) -> Result<bool> {
    if !normal.is_subgroup_of(whole) || !complement.is_subgroup_of(whole) {
        return Err(Error::NotASubgroup);
    }
    Ok(normal.is_normal_in(whole)
        && normal.intersection(complement).order() == 1
        && normal.order() * complement.order() == whole.order())
}

//! Quotients `G/N` realized as the action of `G` on the right cosets of `N`.

use std::collections::HashMap;

use crate::error::{GroupError, Result};
use crate::group::PermGroup;
use crate::hom::ActionHom;
use crate::limits;
use crate::perm::Permutation;

/// The natural epimorphism `G -> G/N`.
///
/// Coset representatives are the lexicographically least elements of their
/// cosets, with the kernel itself at position 0. When `N` is trivial the
/// map is the identity on `G` (no coset action is built).
#[derive(Debug, Clone)]
pub struct QuotientMap {
    source: PermGroup,
    kernel: PermGroup,
    target: PermGroup,
    coset_reps: Vec<Permutation>,
    index_of: HashMap<Permutation, usize>,
    hom: Option<ActionHom>,
}

impl QuotientMap {
    pub fn source(&self) -> &PermGroup {
        &self.source
    }

    pub fn kernel(&self) -> &PermGroup {
        &self.kernel
    }

    pub fn target(&self) -> &PermGroup {
        &self.target
    }

    pub fn coset_reps(&self) -> &[Permutation] {
        &self.coset_reps
    }

    pub fn index(&self) -> u128 {
        self.source.order() / self.kernel.order()
    }

    /// True for the identity map on a group modulo the trivial subgroup.
    pub fn is_identity(&self) -> bool {
        self.hom.is_none()
    }

    /// Image of a single element of the source.
    pub fn image(&self, g: &Permutation) -> Result<Permutation> {
        if !self.source.contains(g)? {
            return Err(GroupError::NotSubgroup("quotient image: element outside source"));
        }
        Ok(self.image_unchecked(g))
    }

    fn image_unchecked(&self, g: &Permutation) -> Permutation {
        if self.hom.is_none() {
            return g.clone();
        }
        let images = self
            .coset_reps
            .iter()
            .map(|r| self.index_of[&self.kernel.coset_min(&r.mul(g))] as u32)
            .collect();
        Permutation::from_images_unchecked(images)
    }

    pub fn image_subgroup(&self, s: &PermGroup) -> Result<PermGroup> {
        if !s.is_subgroup_of(&self.source) {
            return Err(GroupError::NotSubgroup("image_subgroup"));
        }
        Ok(PermGroup::from_gens_unchecked(
            self.target.degree(),
            s.generators().iter().map(|g| self.image_unchecked(g)).collect(),
        ))
    }

    pub fn preimage_subgroup(&self, t: &PermGroup) -> Result<PermGroup> {
        if !t.is_subgroup_of(&self.target) {
            return Err(GroupError::NotSubgroup("preimage_subgroup"));
        }
        match &self.hom {
            None => Ok(t.clone()),
            Some(hom) => {
                let mut gens = self.kernel.generators().to_vec();
                for x in t.generators() {
                    gens.push(hom.preimage_element(x).ok_or_else(|| {
                        GroupError::Internal("target element without a preimage".into())
                    })?);
                }
                Ok(PermGroup::from_gens_unchecked(self.source.degree(), gens))
            }
        }
    }

    /// Some element of the source mapping to `t`.
    pub fn preimage_element(&self, t: &Permutation) -> Option<Permutation> {
        match &self.hom {
            None => self.source.has(t).then(|| t.clone()),
            Some(hom) => hom.preimage_element(t),
        }
    }
}

/// Builds `G/N`. `N` must be normal in `G`; the index is bounded by the
/// quotient-degree cap unless `N` is trivial.
pub fn quotient_by(g: &PermGroup, n: &PermGroup) -> Result<QuotientMap> {
    if !n.is_subgroup_of(g) {
        return Err(GroupError::NotSubgroup("quotient_by"));
    }
    if !n.is_normalized_by(g) {
        return Err(GroupError::NotNormal("quotient_by"));
    }
    let id = g.identity();
    if n.order() == 1 {
        return Ok(QuotientMap {
            source: g.clone(),
            kernel: n.clone(),
            target: g.clone(),
            coset_reps: vec![id],
            index_of: HashMap::new(),
            hom: None,
        });
    }
    let index = g.order() / n.order();
    let cap = limits::current().quotient_cap;
    if index > cap {
        return Err(GroupError::QuotientCapExceeded { index, cap });
    }
    let mut reps = vec![n.coset_min(&id)];
    let mut index_of = HashMap::new();
    index_of.insert(reps[0].clone(), 0usize);
    let mut i = 0;
    while i < reps.len() {
        for s in g.generators() {
            let c = n.coset_min(&reps[i].mul(s));
            if !index_of.contains_key(&c) {
                index_of.insert(c.clone(), reps.len());
                reps.push(c);
            }
        }
        i += 1;
    }
    if reps.len() as u128 != index {
        return Err(GroupError::Internal(format!(
            "coset enumeration found {} cosets, expected {index}",
            reps.len()
        )));
    }
    let images: Vec<Permutation> = g
        .generators()
        .iter()
        .map(|s| {
            Permutation::from_images_unchecked(
                reps.iter()
                    .map(|r| index_of[&n.coset_min(&r.mul(s))] as u32)
                    .collect(),
            )
        })
        .collect();
    let degree = reps.len();
    let hom = ActionHom::new(g, degree, images.clone())?;
    let target = PermGroup::from_gens_unchecked(degree, images);
    Ok(QuotientMap {
        source: g.clone(),
        kernel: n.clone(),
        target,
        coset_reps: reps,
        index_of,
        hom: Some(hom),
    })
}

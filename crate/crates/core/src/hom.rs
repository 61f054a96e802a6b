//! Homomorphisms from a permutation group into a symmetric group, given by
//! generator images.
//!
//! The map is realized through its graph: the group generated by the pairs
//! `(image(s), s)` acting on `target ⊔ source` with the target points first.
//! The kernel is then the pointwise stabilizer of the target points, and
//! preimages come from sifting through the target levels only.

use crate::chain::StabChain;
use crate::error::{GroupError, Result};
use crate::group::PermGroup;
use crate::perm::Permutation;

#[derive(Debug, Clone)]
pub struct ActionHom {
    source: PermGroup,
    target_degree: usize,
    images: Vec<Permutation>,
    graph: StabChain,
}

impl ActionHom {
    /// `images[i]` is the image of `source.generators()[i]`. The caller
    /// guarantees that these define a homomorphism.
    pub fn new(source: &PermGroup, target_degree: usize, images: Vec<Permutation>) -> Result<Self> {
        if images.len() != source.generators().len() {
            return Err(GroupError::Internal(
                "one image per generator is required".into(),
            ));
        }
        if let Some(bad) = images.iter().find(|t| t.degree() != target_degree) {
            return Err(GroupError::DegreeMismatch {
                expected: target_degree,
                found: bad.degree(),
            });
        }
        let n = source.degree();
        let total = target_degree + n;
        let pairs: Vec<Permutation> = source
            .generators()
            .iter()
            .zip(&images)
            .map(|(s, t)| {
                let mut img: Vec<u32> = t.images().to_vec();
                img.extend(s.images().iter().map(|&x| x + target_degree as u32));
                Permutation::from_images_unchecked(img)
            })
            .collect();
        let graph = StabChain::new(total, &pairs);
        Ok(ActionHom {
            source: source.clone(),
            target_degree,
            images,
            graph,
        })
    }

    pub fn source(&self) -> &PermGroup {
        &self.source
    }

    pub fn image_group(&self) -> PermGroup {
        PermGroup::from_gens_unchecked(self.target_degree, self.images.clone())
    }

    fn source_part(&self, g: &Permutation) -> Permutation {
        let k = self.target_degree as u32;
        Permutation::from_images_unchecked(
            g.images()[self.target_degree..].iter().map(|&x| x - k).collect(),
        )
    }

    pub fn kernel(&self) -> PermGroup {
        let gens: Vec<Permutation> = self
            .graph
            .stabilizer_generators(self.target_degree)
            .iter()
            .map(|g| self.source_part(g))
            .collect();
        PermGroup::from_gens_unchecked(self.source.degree(), gens)
    }

    /// Some element of the source mapping to `t`, if `t` lies in the image.
    pub fn preimage_element(&self, t: &Permutation) -> Option<Permutation> {
        if t.degree() != self.target_degree {
            return None;
        }
        let probe = t.extend(self.target_degree + self.source.degree());
        self.graph
            .lift_prefix(&probe, self.target_degree)
            .map(|g| self.source_part(&g))
    }

    /// Full preimage of a subgroup of the image.
    pub fn preimage(&self, t: &PermGroup) -> Result<PermGroup> {
        let mut gens: Vec<Permutation> = self.kernel().generators().to_vec();
        for x in t.generators() {
            let g = self
                .preimage_element(x)
                .ok_or(GroupError::NotSubgroup("preimage: element outside the image"))?;
            gens.push(g);
        }
        Ok(PermGroup::from_gens_unchecked(self.source.degree(), gens))
    }
}

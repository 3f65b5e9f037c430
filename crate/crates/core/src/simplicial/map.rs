use std::sync::Arc;

use super::set::FiniteSimplicialSet;
use super::simplex_ref::SimplexRef;
use super::subset::PointedSubset;
use crate::error::{Error, Result};

/// A pointed simplicial map, given by the images of nondegenerate simplices.
#[derive(Clone, Debug)]
pub struct SimplicialMap {
    source: Arc<FiniteSimplicialSet>,
    target: Arc<FiniteSimplicialSet>,
    images: Vec<Vec<SimplexRef>>,
}

impl SimplicialMap {
    /// Validates that the images commute with faces and fix the basepoint.
    pub fn new(
        source: Arc<FiniteSimplicialSet>,
        target: Arc<FiniteSimplicialSet>,
        images: Vec<Vec<SimplexRef>>,
    ) -> Result<Self> {
        let map = SimplicialMap {
            source,
            target,
            images,
        };
        map.validate()?;
        Ok(map)
    }

    pub fn identity(x: Arc<FiniteSimplicialSet>) -> Self {
        let images = (0..=x.truncation())
            .map(|d| (0..x.count(d) as u32).map(|i| SimplexRef::nondegenerate(d, i)).collect())
            .collect();
        SimplicialMap {
            source: x.clone(),
            target: x,
            images,
        }
    }

    /// The map collapsing everything onto the basepoint.
    pub fn constant(source: Arc<FiniteSimplicialSet>, target: Arc<FiniteSimplicialSet>) -> Self {
        let images = (0..=source.truncation())
            .map(|d| vec![SimplexRef::degenerate_vertex(0, d); source.count(d)])
            .collect();
        SimplicialMap {
            source,
            target,
            images,
        }
    }

    /// Inclusion of a subset, realised as a map out of the subset's own simplicial set.
    pub fn inclusion(
        ambient: Arc<FiniteSimplicialSet>,
        subset: &PointedSubset,
    ) -> Result<(Arc<FiniteSimplicialSet>, SimplicialMap)> {
        let (sub, old_ids) = subset.to_simplicial_set(&ambient)?;
        let sub = Arc::new(sub);
        let images = old_ids
            .iter()
            .enumerate()
            .map(|(d, ids)| ids.iter().map(|&i| SimplexRef::nondegenerate(d, i)).collect())
            .collect();
        let map = SimplicialMap {
            source: sub.clone(),
            target: ambient,
            images,
        };
        Ok((sub, map))
    }

    /// Whether the map is the identity of its source.
    pub fn is_identity(&self) -> bool {
        Arc::ptr_eq(&self.source, &self.target)
            && self.images.iter().enumerate().all(|(d, level)| {
                level
                    .iter()
                    .enumerate()
                    .all(|(i, r)| *r == SimplexRef::nondegenerate(d, i as u32))
            })
    }

    pub fn source(&self) -> &Arc<FiniteSimplicialSet> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FiniteSimplicialSet> {
        &self.target
    }

    pub fn image_of(&self, dim: usize, id: u32) -> SimplexRef {
        self.images[dim][id as usize]
    }

    /// Image of an arbitrary (possibly degenerate) simplex.
    pub fn apply(&self, r: &SimplexRef) -> SimplexRef {
        self.images[r.base_dim()][r.base() as usize].under(r.degeneracies(), r.dim())
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &SimplicialMap) -> Result<SimplicialMap> {
        if !Arc::ptr_eq(&self.target, &other.source) && *self.target != *other.source {
            return Err(Error::InvalidMap("composite of maps with mismatched ends".into()));
        }
        let images = self
            .images
            .iter()
            .map(|level| level.iter().map(|r| other.apply(r)).collect())
            .collect();
        Ok(SimplicialMap {
            source: self.source.clone(),
            target: other.target.clone(),
            images,
        })
    }

    pub fn validate(&self) -> Result<()> {
        let src = &self.source;
        let tgt = &self.target;
        if self.images.len() != src.truncation() + 1 {
            return Err(Error::InvalidMap("images must cover every source dimension".into()));
        }
        if tgt.truncation() < src.truncation() {
            return Err(Error::Truncation {
                requested: src.truncation(),
                available: tgt.truncation(),
            });
        }
        for (d, level) in self.images.iter().enumerate() {
            if level.len() != src.count(d) {
                return Err(Error::InvalidMap(format!("wrong number of images in dimension {d}")));
            }
            for r in level {
                if r.dim() != d {
                    return Err(Error::InvalidMap(format!(
                        "image of a {d}-simplex has dimension {}",
                        r.dim()
                    )));
                }
                tgt.check_ref(r)?;
            }
        }
        if !FiniteSimplicialSet::is_basepoint(&self.images[0][0]) {
            return Err(Error::InvalidMap("basepoint not preserved".into()));
        }
        for d in 1..=src.truncation() {
            for id in 0..src.count(d) as u32 {
                let x = SimplexRef::nondegenerate(d, id);
                let fx = self.apply(&x);
                for i in 0..=d {
                    let lhs = tgt.face_unchecked(&fx, i);
                    let rhs = self.apply(&src.face_unchecked(&x, i));
                    if lhs != rhs {
                        return Err(Error::InvalidMap(format!(
                            "d{i} f({}) = {} but f(d{i} {}) = {}",
                            src.label(d, id),
                            tgt.ref_string(&lhs),
                            src.label(d, id),
                            tgt.ref_string(&rhs)
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// Smallest pointed subset of the target containing the image.
    pub fn image_subset(&self) -> Result<PointedSubset> {
        let seeds = self
            .images
            .iter()
            .flatten()
            .map(|r| (r.base_dim(), r.base()))
            .collect::<Vec<_>>();
        PointedSubset::closure(&self.target, seeds)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplicial::{fixtures, product};

    #[test]
    fn identity_and_constant_images() {
        let q = Arc::new(fixtures::sphere_two_disc(3));
        let id = SimplicialMap::identity(q.clone());
        assert_eq!(id.image_subset().unwrap(), PointedSubset::full(&q));
        let c = SimplicialMap::constant(q.clone(), q.clone());
        c.validate().unwrap();
        assert_eq!(c.image_subset().unwrap(), PointedSubset::basepoint(&q));
    }

    #[test]
    fn rejects_non_simplicial_images() {
        let q = Arc::new(fixtures::sphere_two_disc(3));
        let circle = Arc::new(fixtures::circle(3));
        // send e to the basepoint but keep a nondegenerate 2-simplex: impossible target anyway
        let mut images = vec![
            vec![SimplexRef::nondegenerate(0, 0)],
            vec![SimplexRef::nondegenerate(1, 0)],
            vec![SimplexRef::degenerate_vertex(0, 2); 2],
            vec![],
        ];
        assert!(SimplicialMap::new(q.clone(), circle.clone(), images.clone()).is_err());
        images[2] = vec![SimplexRef::from_parts(1, 0, 0b01, 2).unwrap(); 2];
        // d0 s0 e = e, but d0 g = e maps to e: consistent; d1 s0 e = e vs d1 g = s0* -> mismatch
        assert!(SimplicialMap::new(q, circle, images).is_err());
    }

    #[test]
    fn diagonal_image_in_circle_smash_square() {
        let c = Arc::new(fixtures::circle(3));
        let cc = Arc::new(product::smash_power(&c, 2, 3).unwrap());
        let diag = product::reduced_diagonal(c.clone(), cc.clone()).unwrap();
        let img = diag.image_subset().unwrap();
        // (e,e) in dimension 1 only; the 2-simplices of S^1 ∧ S^1 are the shuffles (s0e, s1e), (s1e, s0e)
        assert_eq!(img.count(1), 1);
        assert_eq!(img.count(2), 0);
        assert_eq!(cc.count(2), 2);
    }
}

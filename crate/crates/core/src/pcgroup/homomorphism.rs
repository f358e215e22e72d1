use serde::Serialize;

use super::{Element, PcPresentation, SubgroupSpec};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomVerdict {
    pub is_homomorphism: bool,
    /// First relation whose image is not the identity.
    pub failed_relation: Option<String>,
    pub surjective: Option<bool>,
    pub image_log_p: Option<usize>,
    pub kernel_log_p: Option<usize>,
}

/// Image of an element of `source` under the map given by generator images.
pub(crate) fn image_raw(source: &PcPresentation, target: &PcPresentation, images: &[Vec<u32>], e: &[u32]) -> Vec<u32> {
    let mut acc = vec![0u32; target.num_generators()];
    for (i, &k) in e.iter().enumerate() {
        if k != 0 {
            acc = target.mul_raw(&acc, &target.pow_raw(&images[i], k as i64));
        }
    }
    let _ = source;
    acc
}

impl PcPresentation {
    /// Checks that the generator images satisfy every relation of `self`.
    pub fn check_homomorphism(&self, target: &PcPresentation, images: &[Element]) -> Result<HomVerdict> {
        if images.len() != self.num_generators() {
            return Err(Error::InvalidParameters(format!(
                "expected {} images, got {}",
                self.num_generators(),
                images.len()
            )));
        }
        if images.iter().any(|e| e.fingerprint() != target.fingerprint()) {
            return Err(Error::PresentationMismatch);
        }
        let imgs: Vec<Vec<u32>> = images.iter().map(|e| e.exponents().to_vec()).collect();
        let n = self.num_generators();
        let name = |i: usize| self.gens[i].name.as_str();
        let mut failed = None;
        'outer: for i in 0..n {
            let lhs = target.pow_raw(&imgs[i], self.gens[i].rel_order as i64);
            let rhs = image_raw(self, target, &imgs, &self.power[i]);
            if lhs != rhs {
                failed = Some(format!("{}^{}", name(i), self.gens[i].rel_order));
                break;
            }
            for j in i + 1..n {
                let lhs = target.comm_raw(&imgs[j], &imgs[i]);
                let rhs = match &self.comm[j][i] {
                    Some(w) => image_raw(self, target, &imgs, w),
                    None => vec![0; target.num_generators()],
                };
                if lhs != rhs {
                    failed = Some(format!("[{},{}]", name(j), name(i)));
                    break 'outer;
                }
            }
        }
        if let Some(f) = failed {
            return Ok(HomVerdict {
                is_homomorphism: false,
                failed_relation: Some(f),
                surjective: None,
                image_log_p: None,
                kernel_log_p: None,
            });
        }
        let image = SubgroupSpec::from_raw(target, &imgs, false);
        let il = image.order_log_p();
        Ok(HomVerdict {
            is_homomorphism: true,
            failed_relation: None,
            surjective: Some(il as u32 == target.order_log_p()),
            image_log_p: Some(il),
            kernel_log_p: Some(self.order_log_p() as usize - il),
        })
    }

    /// Image of one element under a homomorphism given by generator images.
    pub fn map_element(&self, target: &PcPresentation, images: &[Element], e: &Element) -> Result<Element> {
        if e.fingerprint() != self.fingerprint() {
            return Err(Error::PresentationMismatch);
        }
        let imgs: Vec<Vec<u32>> = images.iter().map(|e| e.exponents().to_vec()).collect();
        Ok(target.wrap(image_raw(self, target, &imgs, e.exponents())))
    }
}

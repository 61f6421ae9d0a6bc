use std::sync::Arc;

use super::context::same_context;
use super::{Polynomial, RingContext};
use crate::error::{Error, Result};

/// Ring homomorphism given by one image per source variable.
#[derive(Clone, Debug)]
pub struct RingMap {
    source: Arc<RingContext>,
    target: Arc<RingContext>,
    images: Vec<Polynomial>,
}

impl RingMap {
    pub fn new(
        source: &Arc<RingContext>,
        target: &Arc<RingContext>,
        images: Vec<Polynomial>,
    ) -> Result<RingMap> {
        if images.len() != source.nvars() {
            return Err(Error::LengthMismatch { expected: source.nvars(), found: images.len() });
        }
        if images.iter().any(|p| !same_context(p.context(), target)) {
            return Err(Error::ContextMismatch);
        }
        Ok(RingMap { source: source.clone(), target: target.clone(), images })
    }

    pub fn identity(ctx: &Arc<RingContext>) -> RingMap {
        let images = (0..ctx.nvars()).map(|i| Polynomial::variable(ctx, i)).collect();
        RingMap { source: ctx.clone(), target: ctx.clone(), images }
    }

    pub fn source(&self) -> &Arc<RingContext> {
        &self.source
    }

    pub fn target(&self) -> &Arc<RingContext> {
        &self.target
    }

    pub fn images(&self) -> &[Polynomial] {
        &self.images
    }

    /// Substitute every variable by its image and expand.
    pub fn apply(&self, p: &Polynomial) -> Result<Polynomial> {
        if !same_context(p.context(), &self.source) {
            return Err(Error::ContextMismatch);
        }
        let mut powers: Vec<Vec<Polynomial>> =
            self.images.iter().map(|img| vec![Polynomial::one(&self.target), img.clone()]).collect();
        let mut result = Polynomial::zero(&self.target);
        for (m, c) in p.terms() {
            let mut value = Polynomial::constant(&self.target, c.clone());
            for (i, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let cache = &mut powers[i];
                while cache.len() <= e as usize {
                    let next = &cache[cache.len() - 1] * &cache[1];
                    cache.push(next);
                }
                value = &value * &cache[e as usize];
            }
            result = &result + &value;
        }
        Ok(result)
    }
}

use cfo_core::noise::NoiseState;
use cfo_core::{BoxError, EvalContext, Objective};

use crate::pbm::linear_array_noise_sigma;

/// Adds one Gaussian deviate to every returned fitness.
///
/// The deviate stream advances once per evaluation in call order, so a run
/// is reproducible for a fixed seed.
#[derive(Debug, Clone)]
pub struct Noisy<O> {
    inner: O,
    noise: NoiseState,
}

impl<O> Noisy<O> {
    pub fn new(inner: O, noise: NoiseState) -> Self {
        Self { inner, noise }
    }

    /// Zero-mean, variance-0.2 noise as used for the noisy linear array.
    pub fn linear_array_preset(inner: O, seed: u64) -> Self {
        Self::new(inner, NoiseState::new(0.0, linear_array_noise_sigma(), seed))
    }

    pub fn noise(&self) -> &NoiseState {
        &self.noise
    }

    pub fn inner(&self) -> &O {
        &self.inner
    }
}

impl<O: Objective> Objective for Noisy<O> {
    fn evaluate(&mut self, x: &[f64], ctx: EvalContext) -> Result<f64, BoxError> {
        let clean = self.inner.evaluate(x, ctx)?;
        Ok(clean + self.noise.deviate())
    }
}

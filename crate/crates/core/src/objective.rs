use crate::error::BoxError;

/// Identifies the evaluation being requested.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EvalContext {
    pub step: usize,
    pub probe: usize,
}

/// A fitness function to be maximized.
///
/// The engine calls `evaluate` once per probe per step, in ascending probe
/// order, so stateful objectives (noise streams, external processes) see a
/// reproducible call sequence.
pub trait Objective {
    fn evaluate(&mut self, x: &[f64], ctx: EvalContext) -> Result<f64, BoxError>;
}

impl<O: Objective + ?Sized> Objective for &mut O {
    fn evaluate(&mut self, x: &[f64], ctx: EvalContext) -> Result<f64, BoxError> {
        (**self).evaluate(x, ctx)
    }
}

impl<O: Objective + ?Sized> Objective for Box<O> {
    fn evaluate(&mut self, x: &[f64], ctx: EvalContext) -> Result<f64, BoxError> {
        (**self).evaluate(x, ctx)
    }
}

/// Adapts an infallible closure.
pub struct FnObjective<F>(pub F);

impl<F: FnMut(&[f64]) -> f64> Objective for FnObjective<F> {
    fn evaluate(&mut self, x: &[f64], _ctx: EvalContext) -> Result<f64, BoxError> {
        Ok((self.0)(x))
    }
}

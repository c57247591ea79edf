//! Three-layer tanh MLPs with exact reverse-mode gradients and Adam.
//!
//! Both the actor and the critic are `obs → 64 → tanh → 64 → tanh → out`.
//! The actor applies a softmax to its output, the critic reads its single
//! output directly. Parameters live in one flat vector so the optimizer can
//! treat them uniformly; layer `l` stores its `fan_out × fan_in` weights
//! row-major followed by its `fan_out` biases.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt::Write as _;

use rand::Rng;

#[allow(unused_imports)] // shadowed by inherent f64 methods whenever std is linked
use num_traits::Float;

use crate::{Error, Result};

pub const HIDDEN: usize = 64;
pub const N_LAYERS: usize = 3;

#[derive(Debug, Clone, PartialEq)]
pub struct MlpParams {
    dims: [usize; N_LAYERS + 1],
    data: Vec<f64>,
}

impl MlpParams {
    pub fn zeros(dims: [usize; N_LAYERS + 1]) -> Self {
        let len = (0..N_LAYERS).map(|l| dims[l + 1] * (dims[l] + 1)).sum();
        Self {
            dims,
            data: vec![0.0; len],
        }
    }

    /// `in → 64 → 64 → out`.
    pub fn standard_dims(input: usize, output: usize) -> [usize; N_LAYERS + 1] {
        [input, HIDDEN, HIDDEN, output]
    }

    /// Weights and biases uniform in `±1/√fan_in`, per layer.
    pub fn init_uniform<R: Rng + ?Sized>(dims: [usize; N_LAYERS + 1], rng: &mut R) -> Self {
        let mut params = Self::zeros(dims);
        for l in 0..N_LAYERS {
            let bound = 1.0 / (dims[l] as f64).sqrt();
            let (start, end) = params.layer_range(l);
            for x in &mut params.data[start..end] {
                *x = rng.random_range(-bound..bound);
            }
        }
        params
    }

    pub fn dims(&self) -> [usize; N_LAYERS + 1] {
        self.dims
    }

    pub fn input_dim(&self) -> usize {
        self.dims[0]
    }

    pub fn output_dim(&self) -> usize {
        self.dims[N_LAYERS]
    }

    pub fn len(&self) -> usize {
        self.data.len()
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub fn as_mut_slice(&mut self) -> &mut [f64] {
        &mut self.data
    }

    pub fn zeros_like(&self) -> Self {
        Self::zeros(self.dims)
    }

    fn layer_offset(&self, layer: usize) -> usize {
        (0..layer).map(|l| self.dims[l + 1] * (self.dims[l] + 1)).sum()
    }

    fn layer_range(&self, layer: usize) -> (usize, usize) {
        let start = self.layer_offset(layer);
        (start, start + self.dims[layer + 1] * (self.dims[layer] + 1))
    }

    pub fn weights(&self, layer: usize) -> &[f64] {
        let start = self.layer_offset(layer);
        &self.data[start..start + self.dims[layer] * self.dims[layer + 1]]
    }

    pub fn weights_mut(&mut self, layer: usize) -> &mut [f64] {
        let start = self.layer_offset(layer);
        let len = self.dims[layer] * self.dims[layer + 1];
        &mut self.data[start..start + len]
    }

    pub fn bias(&self, layer: usize) -> &[f64] {
        let start = self.layer_offset(layer) + self.dims[layer] * self.dims[layer + 1];
        &self.data[start..start + self.dims[layer + 1]]
    }

    pub fn bias_mut(&mut self, layer: usize) -> &mut [f64] {
        let start = self.layer_offset(layer) + self.dims[layer] * self.dims[layer + 1];
        let len = self.dims[layer + 1];
        &mut self.data[start..start + len]
    }

    /// Forward pass, keeping the activations needed by [`MlpParams::backward`].
    pub fn forward(&self, input: &[f64]) -> Result<GradTape> {
        if input.len() != self.dims[0] {
            return Err(Error::DimensionMismatch {
                expected: self.dims[0],
                got: input.len(),
            });
        }
        if input.iter().any(|x| !x.is_finite()) {
            return Err(Error::NonFinite("network input"));
        }
        let mut activations = Vec::with_capacity(N_LAYERS + 1);
        activations.push(input.to_vec());
        for l in 0..N_LAYERS {
            let mut z = self.affine(l, &activations[l]);
            if l + 1 < N_LAYERS {
                z.iter_mut().for_each(|v| *v = v.tanh());
            }
            activations.push(z);
        }
        Ok(GradTape {
            dims: self.dims,
            activations,
        })
    }

    fn affine(&self, layer: usize, x: &[f64]) -> Vec<f64> {
        let w = self.weights(layer);
        let fan_in = self.dims[layer];
        self.bias(layer)
            .iter()
            .enumerate()
            .map(|(j, b)| {
                b + w[j * fan_in..(j + 1) * fan_in]
                    .iter()
                    .zip(x)
                    .map(|(w, x)| w * x)
                    .sum::<f64>()
            })
            .collect()
    }

    /// Gradients of a scalar loss given `∂loss/∂output`.
    pub fn backward(&self, tape: &GradTape, output_grad: &[f64]) -> Result<MlpParams> {
        let mut grads = self.zeros_like();
        self.backward_into(tape, output_grad, &mut grads)?;
        Ok(grads)
    }

    /// As [`MlpParams::backward`], accumulating into `grads`.
    pub fn backward_into(&self, tape: &GradTape, output_grad: &[f64], grads: &mut MlpParams) -> Result<()> {
        if tape.dims != self.dims || grads.dims != self.dims {
            return Err(Error::DimensionMismatch {
                expected: self.len(),
                got: grads.len(),
            });
        }
        if output_grad.len() != self.output_dim() {
            return Err(Error::DimensionMismatch {
                expected: self.output_dim(),
                got: output_grad.len(),
            });
        }
        let mut delta = output_grad.to_vec();
        for l in (0..N_LAYERS).rev() {
            let fan_in = self.dims[l];
            let input = &tape.activations[l];
            {
                let gw = grads.weights_mut(l);
                for (j, d) in delta.iter().enumerate() {
                    if *d == 0.0 {
                        continue;
                    }
                    for (g, x) in gw[j * fan_in..(j + 1) * fan_in].iter_mut().zip(input) {
                        *g += d * x;
                    }
                }
            }
            for (g, d) in grads.bias_mut(l).iter_mut().zip(&delta) {
                *g += d;
            }
            if l == 0 {
                break;
            }
            let w = self.weights(l);
            let mut prev = vec![0.0; fan_in];
            for (j, d) in delta.iter().enumerate() {
                for (p, w) in prev.iter_mut().zip(&w[j * fan_in..(j + 1) * fan_in]) {
                    *p += d * w;
                }
            }
            // input to layer l is tanh(z), d tanh = 1 - tanh²
            for (p, a) in prev.iter_mut().zip(input) {
                *p *= 1.0 - a * a;
            }
            delta = prev;
        }
        Ok(())
    }

    /// Text checkpoint: a header line `mlp d0 d1 d2 d3` followed by one
    /// value per line in storage order.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "mlp {} {} {} {}",
            self.dims[0], self.dims[1], self.dims[2], self.dims[3]
        );
        for v in &self.data {
            let _ = writeln!(out, "{v:?}");
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
        let header = lines.next().ok_or_else(|| Error::Checkpoint("empty".into()))?;
        let mut fields = header.split_whitespace();
        if fields.next() != Some("mlp") {
            return Err(Error::Checkpoint(format!("bad header {header:?}")));
        }
        let mut dims = [0usize; N_LAYERS + 1];
        for d in &mut dims {
            *d = fields
                .next()
                .and_then(|f| f.parse().ok())
                .filter(|&d| d > 0)
                .ok_or_else(|| Error::Checkpoint(format!("bad header {header:?}")))?;
        }
        let mut params = Self::zeros(dims);
        let expected = params.len();
        let values = lines
            .map(|l| {
                l.parse::<f64>()
                    .map_err(|_| Error::Checkpoint(format!("bad value {l:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        if values.len() != expected {
            return Err(Error::Checkpoint(format!(
                "expected {expected} values, found {}",
                values.len()
            )));
        }
        params.data = values;
        Ok(params)
    }
}

/// Activations of one forward pass: the input, both hidden layers after
/// `tanh`, and the raw output.
#[derive(Debug, Clone, PartialEq)]
pub struct GradTape {
    dims: [usize; N_LAYERS + 1],
    activations: Vec<Vec<f64>>,
}

impl GradTape {
    pub fn output(&self) -> &[f64] {
        &self.activations[N_LAYERS]
    }
}

pub fn softmax(logits: &[f64]) -> Vec<f64> {
    let max = logits.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let exps: Vec<f64> = logits.iter().map(|z| (z - max).exp()).collect();
    let sum: f64 = exps.iter().sum();
    exps.into_iter().map(|e| e / sum).collect()
}

pub fn log_softmax(logits: &[f64]) -> Vec<f64> {
    let max = logits.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let lse = max + logits.iter().map(|z| (z - max).exp()).sum::<f64>().ln();
    logits.iter().map(|z| z - lse).collect()
}

/// `−Σ πⱼ log πⱼ` from logits, in nats.
pub fn entropy_from_logits(logits: &[f64]) -> f64 {
    log_softmax(logits).iter().map(|lp| -lp.exp() * lp).sum()
}

/// Action probabilities of the actor.
pub fn policy_forward(params: &MlpParams, obs: &[f64]) -> Result<Vec<f64>> {
    Ok(softmax(params.forward(obs)?.output()))
}

/// State value from the critic.
pub fn value_forward(params: &MlpParams, obs: &[f64]) -> Result<f64> {
    if params.output_dim() != 1 {
        return Err(Error::DimensionMismatch {
            expected: 1,
            got: params.output_dim(),
        });
    }
    Ok(params.forward(obs)?.output()[0])
}

#[derive(Debug, Clone, PartialEq)]
pub struct AdamState {
    pub m: Vec<f64>,
    pub v: Vec<f64>,
    pub t: u64,
    pub beta1: f64,
    pub beta2: f64,
    pub eps: f64,
}

impl AdamState {
    pub fn new(n_params: usize) -> Self {
        Self::with_betas(n_params, 0.9, 0.999, 1e-8)
    }

    pub fn with_betas(n_params: usize, beta1: f64, beta2: f64, eps: f64) -> Self {
        Self {
            m: vec![0.0; n_params],
            v: vec![0.0; n_params],
            t: 0,
            beta1,
            beta2,
            eps,
        }
    }

    /// One bias-corrected Adam update of `params` in place.
    pub fn step(&mut self, params: &mut [f64], grads: &[f64], lr: f64) -> Result<()> {
        if params.len() != self.m.len() || grads.len() != self.m.len() {
            return Err(Error::DimensionMismatch {
                expected: self.m.len(),
                got: if params.len() != self.m.len() {
                    params.len()
                } else {
                    grads.len()
                },
            });
        }
        if !(lr > 0.0 && lr.is_finite()) {
            return Err(Error::InvalidHyper("learning rate must be positive"));
        }
        if grads.iter().any(|g| !g.is_finite()) {
            return Err(Error::NonFinite("gradient"));
        }
        self.t += 1;
        let bc1 = 1.0 - self.beta1.powi(self.t as i32);
        let bc2 = 1.0 - self.beta2.powi(self.t as i32);
        for (((p, g), m), v) in params.iter_mut().zip(grads).zip(&mut self.m).zip(&mut self.v) {
            *m = self.beta1 * *m + (1.0 - self.beta1) * g;
            *v = self.beta2 * *v + (1.0 - self.beta2) * g * g;
            let m_hat = *m / bc1;
            let v_hat = *v / bc2;
            *p -= lr * m_hat / (v_hat.sqrt() + self.eps);
        }
        Ok(())
    }
}

//! Three-layer heterogeneous GNN for per-node speaking classification.
//!
//! Each node kind has its own input projection. Each layer combines a self
//! transform with one neighbor aggregation per edge kind:
//!
//! ```text
//! h0_i = relu(P_kind(i) x_i + b_kind(i))
//! hl_i = relu(W_self h_i + sum_k AGG_{j in N_k(i)} (W_k h_j) + b)
//! z_i  = w_out . h3_i + b_out
//! ```
//!
//! `AGG` is an elementwise mean or max selected per layer; an empty
//! neighborhood contributes zero. Gradients are computed by a hand-written
//! reverse pass over the cached forward activations.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::linalg::Matrix;
use crate::metrics::average_precision;
use crate::types::{Adjacency, EdgeKind, HeteroGraph};
use crate::{Error, Result};

pub const NUM_LAYERS: usize = 3;
pub const MOMENTUM: f64 = 0.9;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Aggregation {
    Mean,
    Max,
}

impl Aggregation {
    pub fn name(self) -> &'static str {
        match self {
            Aggregation::Mean => "mean",
            Aggregation::Max => "max",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "mean" => Some(Aggregation::Mean),
            "max" => Some(Aggregation::Max),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ModelConfig {
    pub d_av: usize,
    pub d_a: usize,
    pub d_h: usize,
    pub agg_schedule: [Aggregation; NUM_LAYERS],
    pub learning_rate: f64,
    pub epochs: usize,
    pub l2_weight: f64,
    pub seed: u64,
}

impl Default for ModelConfig {
    fn default() -> Self {
        ModelConfig {
            d_av: 8,
            d_a: 4,
            d_h: 16,
            agg_schedule: [Aggregation::Mean, Aggregation::Mean, Aggregation::Max],
            learning_rate: 1e-2,
            epochs: 30,
            l2_weight: 1e-4,
            seed: 0,
        }
    }
}

impl ModelConfig {
    pub fn validate(&self) -> Result<()> {
        if self.d_av == 0 || self.d_a == 0 || self.d_h == 0 {
            return Err(Error::InvalidConfig("dimensions must be positive".into()));
        }
        let has = |a| self.agg_schedule.contains(&a);
        if !has(Aggregation::Mean) || !has(Aggregation::Max) {
            return Err(Error::InvalidConfig(
                "aggregation schedule must use both mean and max".into(),
            ));
        }
        if !(self.learning_rate >= 0.0 && self.learning_rate.is_finite()) {
            return Err(Error::InvalidConfig("learning rate must be finite and >= 0".into()));
        }
        if !(self.l2_weight >= 0.0 && self.l2_weight.is_finite()) {
            return Err(Error::InvalidConfig("l2 weight must be finite and >= 0".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Linear {
    pub weight: Matrix,
    pub bias: Vec<f64>,
}

impl Linear {
    fn zeros(out: usize, inp: usize) -> Self {
        Linear {
            weight: Matrix::zeros(out, inp),
            bias: vec![0.0; out],
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Layer {
    pub self_weight: Matrix,
    /// Indexed by [`EdgeKind::index`].
    pub neighbor: [Matrix; 3],
    pub bias: Vec<f64>,
}

impl Layer {
    fn zeros(d: usize) -> Self {
        Layer {
            self_weight: Matrix::zeros(d, d),
            neighbor: [Matrix::zeros(d, d), Matrix::zeros(d, d), Matrix::zeros(d, d)],
            bias: vec![0.0; d],
        }
    }
}

/// Model weights. Also used as the container for gradients.
#[derive(Debug, Clone, PartialEq)]
pub struct ModelParams {
    pub input_visible: Linear,
    pub input_wearer: Linear,
    pub layers: [Layer; NUM_LAYERS],
    pub output: Linear,
}

impl ModelParams {
    pub fn zeros(cfg: &ModelConfig) -> Self {
        let d = cfg.d_h;
        ModelParams {
            input_visible: Linear::zeros(d, cfg.d_av),
            input_wearer: Linear::zeros(d, cfg.d_a),
            layers: [Layer::zeros(d), Layer::zeros(d), Layer::zeros(d)],
            output: Linear::zeros(1, d),
        }
    }

    /// Visits every tensor as `(name, rows, cols, values)` in checkpoint order.
    /// Biases are column vectors.
    pub fn visit(&self, mut f: impl FnMut(&str, usize, usize, &[f64])) {
        fn lin(name: &str, l: &Linear, f: &mut impl FnMut(&str, usize, usize, &[f64])) {
            f(&format!("{name}.weight"), l.weight.rows(), l.weight.cols(), l.weight.as_slice());
            f(&format!("{name}.bias"), l.bias.len(), 1, &l.bias);
        }
        lin("input_visible", &self.input_visible, &mut f);
        lin("input_wearer", &self.input_wearer, &mut f);
        for (i, layer) in self.layers.iter().enumerate() {
            let m = &layer.self_weight;
            f(&format!("layer{}.self", i + 1), m.rows(), m.cols(), m.as_slice());
            for k in EdgeKind::ALL {
                let m = &layer.neighbor[k.index()];
                f(&format!("layer{}.{}", i + 1, k.name()), m.rows(), m.cols(), m.as_slice());
            }
            f(&format!("layer{}.bias", i + 1), layer.bias.len(), 1, &layer.bias);
        }
        lin("output", &self.output, &mut f);
    }

    /// Mutable counterpart of [`ModelParams::visit`], same order.
    pub fn visit_mut(&mut self, mut f: impl FnMut(&str, usize, usize, &mut [f64])) {
        fn lin(name: &str, l: &mut Linear, f: &mut impl FnMut(&str, usize, usize, &mut [f64])) {
            let (r, c) = (l.weight.rows(), l.weight.cols());
            f(&format!("{name}.weight"), r, c, l.weight.as_mut_slice());
            f(&format!("{name}.bias"), l.bias.len(), 1, &mut l.bias);
        }
        lin("input_visible", &mut self.input_visible, &mut f);
        lin("input_wearer", &mut self.input_wearer, &mut f);
        for (i, layer) in self.layers.iter_mut().enumerate() {
            let m = &mut layer.self_weight;
            let (r, c) = (m.rows(), m.cols());
            f(&format!("layer{}.self", i + 1), r, c, m.as_mut_slice());
            for k in EdgeKind::ALL {
                let m = &mut layer.neighbor[k.index()];
                let (r, c) = (m.rows(), m.cols());
                f(&format!("layer{}.{}", i + 1, k.name()), r, c, m.as_mut_slice());
            }
            let n = layer.bias.len();
            f(&format!("layer{}.bias", i + 1), n, 1, &mut layer.bias);
        }
        lin("output", &mut self.output, &mut f);
    }

    pub fn flatten(&self) -> Vec<f64> {
        let mut out = Vec::new();
        self.visit(|_, _, _, v| out.extend_from_slice(v));
        out
    }

    /// Overwrites all values from a flat vector in [`ModelParams::visit`] order.
    pub fn assign(&mut self, flat: &[f64]) -> Result<()> {
        if flat.len() != self.len() {
            return Err(Error::InvalidInput(format!(
                "expected {} parameters, got {}",
                self.len(),
                flat.len()
            )));
        }
        let mut at = 0;
        self.visit_mut(|_, _, _, v| {
            v.copy_from_slice(&flat[at..at + v.len()]);
            at += v.len();
        });
        Ok(())
    }

    pub fn len(&self) -> usize {
        let mut n = 0;
        self.visit(|_, _, _, v| n += v.len());
        n
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn squared_norm(&self) -> f64 {
        let mut s = 0.0;
        self.visit(|_, _, _, v| s += v.iter().map(|x| x * x).sum::<f64>());
        s
    }

    pub fn is_finite(&self) -> bool {
        let mut ok = true;
        self.visit(|_, _, _, v| ok &= v.iter().all(|x| x.is_finite()));
        ok
    }
}

/// Glorot-uniform weights and zero biases, deterministic in `cfg.seed`.
pub fn init_params(cfg: &ModelConfig) -> Result<ModelParams> {
    cfg.validate()?;
    let mut p = ModelParams::zeros(cfg);
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    p.visit_mut(|name, rows, cols, v| {
        if name.ends_with(".bias") {
            return;
        }
        let s = libm::sqrt(6.0 / (rows + cols) as f64);
        for x in v.iter_mut() {
            *x = rng.random_range(-s..=s);
        }
    });
    Ok(p)
}

/// Cached activations of one forward pass.
pub struct Forward {
    inputs: Vec<Vec<f64>>,
    /// Pre-activations for the input projection and each layer.
    pre: Vec<Vec<Vec<f64>>>,
    /// Post-ReLU states `h0..h3`.
    hidden: Vec<Vec<Vec<f64>>>,
    /// `argmax[layer][kind][node * d_h + c]`, `usize::MAX` when empty.
    argmax: Vec<[Vec<usize>; 3]>,
    pub logits: Vec<f64>,
}

impl Forward {
    /// ReLU signs and max-aggregation winners. Two parameter settings with the
    /// same pattern lie in the same smooth piece of the network.
    pub fn pattern(&self) -> Vec<usize> {
        let mut out = Vec::new();
        for layer in &self.pre {
            for node in layer {
                out.extend(node.iter().map(|&v| usize::from(v > 0.0)));
            }
        }
        for layer in &self.argmax {
            for kind in layer {
                out.extend_from_slice(kind);
            }
        }
        out
    }

    /// Smallest absolute pre-activation, a proxy for distance to a ReLU kink.
    pub fn min_abs_preactivation(&self) -> f64 {
        self.pre
            .iter()
            .flatten()
            .flatten()
            .fold(f64::INFINITY, |m, v| m.min(v.abs()))
    }
}

fn check_inputs(g: &HeteroGraph, cfg: &ModelConfig) -> Result<Vec<Vec<f64>>> {
    g.nodes
        .iter()
        .enumerate()
        .map(|(i, node)| {
            let expected = if node.kind.is_wearer() { cfg.d_a } else { cfg.d_av };
            if node.feature.len() != expected {
                return Err(Error::DimMismatch {
                    node: i,
                    expected,
                    got: node.feature.len(),
                });
            }
            if node.feature.iter().any(|v| !v.is_finite()) {
                return Err(Error::NonFiniteFeature { node: i });
            }
            Ok(node.feature.iter().map(|&v| v as f64).collect())
        })
        .collect()
}

fn relu(v: &[f64]) -> Vec<f64> {
    v.iter().map(|&x| if x > 0.0 { x } else { 0.0 }).collect()
}

pub fn forward_cached(g: &HeteroGraph, p: &ModelParams, cfg: &ModelConfig) -> Result<Forward> {
    let inputs = check_inputs(g, cfg)?;
    let adj = g.adjacency();
    let n = g.num_nodes();
    let d = cfg.d_h;

    let mut pre0 = Vec::with_capacity(n);
    for (node, x) in g.nodes.iter().zip(&inputs) {
        let lin = if node.kind.is_wearer() {
            &p.input_wearer
        } else {
            &p.input_visible
        };
        let mut z = lin.bias.clone();
        lin.weight.mul_vec_acc(x, &mut z);
        pre0.push(z);
    }
    let mut hidden = vec![pre0.iter().map(|z| relu(z)).collect::<Vec<_>>()];
    let mut pre = vec![pre0];
    let mut argmax = Vec::with_capacity(NUM_LAYERS);

    for (l, layer) in p.layers.iter().enumerate() {
        let h = &hidden[l];
        let mut z: Vec<Vec<f64>> = h
            .iter()
            .map(|hi| {
                let mut zi = layer.bias.clone();
                layer.self_weight.mul_vec_acc(hi, &mut zi);
                zi
            })
            .collect();
        let mut winners: [Vec<usize>; 3] = [Vec::new(), Vec::new(), Vec::new()];
        for k in EdgeKind::ALL {
            let messages = messages(&layer.neighbor[k.index()], h, &adj, k);
            let w = aggregate(cfg.agg_schedule[l], &messages, &adj, k, n, d, &mut z);
            winners[k.index()] = w;
        }
        hidden.push(z.iter().map(|zi| relu(zi)).collect());
        pre.push(z);
        argmax.push(winners);
    }

    let logits = hidden[NUM_LAYERS]
        .iter()
        .map(|h| {
            let mut out = p.output.bias.clone();
            p.output.weight.mul_vec_acc(h, &mut out);
            out[0]
        })
        .collect();

    Ok(Forward {
        inputs,
        pre,
        hidden,
        argmax,
        logits,
    })
}

/// `W_k h_j` for every node that is a neighbor of kind `k` of someone.
fn messages(w: &Matrix, h: &[Vec<f64>], adj: &Adjacency, k: EdgeKind) -> Vec<Option<Vec<f64>>> {
    (0..h.len())
        .map(|j| {
            if adj.of(k, j).is_empty() {
                None
            } else {
                let mut m = vec![0.0; w.rows()];
                w.mul_vec_acc(&h[j], &mut m);
                Some(m)
            }
        })
        .collect()
}

/// Adds the aggregated messages into `z` and returns the max winners
/// (empty for mean aggregation).
fn aggregate(
    agg: Aggregation,
    messages: &[Option<Vec<f64>>],
    adj: &Adjacency,
    k: EdgeKind,
    n: usize,
    d: usize,
    z: &mut [Vec<f64>],
) -> Vec<usize> {
    let msg = |j: usize| messages[j].as_deref().expect("neighbor has a message");
    match agg {
        Aggregation::Mean => {
            for (i, zi) in z.iter_mut().enumerate() {
                let nbrs = adj.of(k, i);
                if nbrs.is_empty() {
                    continue;
                }
                let scale = 1.0 / nbrs.len() as f64;
                for &j in nbrs {
                    for (zc, &m) in zi.iter_mut().zip(msg(j)) {
                        *zc += scale * m;
                    }
                }
            }
            Vec::new()
        }
        Aggregation::Max => {
            let mut winners = vec![usize::MAX; n * d];
            for (i, zi) in z.iter_mut().enumerate() {
                let nbrs = adj.of(k, i);
                if nbrs.is_empty() {
                    continue;
                }
                for c in 0..d {
                    // neighbors are sorted, so strict comparison keeps the lowest index on ties
                    let mut best = nbrs[0];
                    let mut best_v = msg(best)[c];
                    for &j in &nbrs[1..] {
                        let v = msg(j)[c];
                        if v > best_v {
                            best = j;
                            best_v = v;
                        }
                    }
                    winners[i * d + c] = best;
                    zi[c] += best_v;
                }
            }
            winners
        }
    }
}

pub fn forward(g: &HeteroGraph, p: &ModelParams, cfg: &ModelConfig) -> Result<Vec<f64>> {
    Ok(forward_cached(g, p, cfg)?.logits)
}

pub fn sigmoid(z: f64) -> f64 {
    if z >= 0.0 {
        1.0 / (1.0 + libm::exp(-z))
    } else {
        let e = libm::exp(z);
        e / (1.0 + e)
    }
}

/// Per-node speaking probability, in node order.
pub fn predict(g: &HeteroGraph, p: &ModelParams, cfg: &ModelConfig) -> Result<Vec<f64>> {
    Ok(forward(g, p, cfg)?.into_iter().map(sigmoid).collect())
}

/// Mean binary cross-entropy with logits, in the overflow-free form
/// `max(z, 0) - z y + log(1 + exp(-|z|))`.
pub fn bce_loss(logits: &[f64], labels: &[f64]) -> Result<f64> {
    if logits.is_empty() {
        return Err(Error::EmptyInput);
    }
    if logits.len() != labels.len() {
        return Err(Error::InvalidInput(format!(
            "{} logits but {} labels",
            logits.len(),
            labels.len()
        )));
    }
    if labels.iter().any(|&y| y != 0.0 && y != 1.0) {
        return Err(Error::InvalidInput("labels must be 0 or 1".into()));
    }
    let total: f64 = logits
        .iter()
        .zip(labels)
        .map(|(&z, &y)| z.max(0.0) - z * y + libm::log1p(libm::exp(-z.abs())))
        .sum();
    Ok(total / logits.len() as f64)
}

pub fn l2_penalty(p: &ModelParams, weight: f64) -> f64 {
    0.5 * weight * p.squared_norm()
}

fn graph_labels(g: &HeteroGraph) -> Result<Vec<f64>> {
    if !g.is_labeled() {
        return Err(Error::Unlabeled);
    }
    g.labels().ok_or(Error::Unlabeled)
}

/// Training objective: mean BCE over the graph's nodes plus the L2 term.
pub fn loss(g: &HeteroGraph, p: &ModelParams, cfg: &ModelConfig) -> Result<f64> {
    let labels = graph_labels(g)?;
    let logits = forward(g, p, cfg)?;
    Ok(bce_loss(&logits, &labels)? + l2_penalty(p, cfg.l2_weight))
}

/// Objective value and its exact gradient with respect to every parameter.
pub fn backward(g: &HeteroGraph, p: &ModelParams, cfg: &ModelConfig) -> Result<(f64, ModelParams)> {
    let labels = graph_labels(g)?;
    let fwd = forward_cached(g, p, cfg)?;
    let value = bce_loss(&fwd.logits, &labels)? + l2_penalty(p, cfg.l2_weight);

    let adj = g.adjacency();
    let n = g.num_nodes();
    let d = cfg.d_h;
    let mut grad = ModelParams::zeros(cfg);

    let inv_n = 1.0 / n as f64;
    let mut dh: Vec<Vec<f64>> = Vec::with_capacity(n);
    for (i, (&z, &y)) in fwd.logits.iter().zip(&labels).enumerate() {
        let dz = (sigmoid(z) - y) * inv_n;
        grad.output.bias[0] += dz;
        grad.output.weight.add_outer(&[dz], &fwd.hidden[NUM_LAYERS][i]);
        let mut dhi = vec![0.0; d];
        p.output.weight.mul_t_vec_acc(&[dz], &mut dhi);
        dh.push(dhi);
    }

    for l in (0..NUM_LAYERS).rev() {
        let layer = &p.layers[l];
        let glayer = &mut grad.layers[l];
        let h_prev = &fwd.hidden[l];
        let dz: Vec<Vec<f64>> = dh
            .iter()
            .zip(&fwd.pre[l + 1])
            .map(|(g, z)| g.iter().zip(z).map(|(&g, &z)| if z > 0.0 { g } else { 0.0 }).collect())
            .collect();

        let mut dh_prev = vec![vec![0.0; d]; n];
        for i in 0..n {
            for (b, &g) in glayer.bias.iter_mut().zip(&dz[i]) {
                *b += g;
            }
            glayer.self_weight.add_outer(&dz[i], &h_prev[i]);
            layer.self_weight.mul_t_vec_acc(&dz[i], &mut dh_prev[i]);
        }

        for k in EdgeKind::ALL {
            // gradient with respect to each sender's message W_k h_j
            let mut dmsg: Vec<Option<Vec<f64>>> = vec![None; n];
            match cfg.agg_schedule[l] {
                Aggregation::Mean => {
                    for i in 0..n {
                        let nbrs = adj.of(k, i);
                        if nbrs.is_empty() {
                            continue;
                        }
                        let scale = 1.0 / nbrs.len() as f64;
                        for &j in nbrs {
                            let m = dmsg[j].get_or_insert_with(|| vec![0.0; d]);
                            for (mc, &g) in m.iter_mut().zip(&dz[i]) {
                                *mc += scale * g;
                            }
                        }
                    }
                }
                Aggregation::Max => {
                    let winners = &fwd.argmax[l][k.index()];
                    for i in 0..n {
                        if adj.of(k, i).is_empty() {
                            continue;
                        }
                        for c in 0..d {
                            let j = winners[i * d + c];
                            dmsg[j].get_or_insert_with(|| vec![0.0; d])[c] += dz[i][c];
                        }
                    }
                }
            }
            let w = &layer.neighbor[k.index()];
            let gw = &mut glayer.neighbor[k.index()];
            for (j, m) in dmsg.iter().enumerate() {
                if let Some(m) = m {
                    gw.add_outer(m, &h_prev[j]);
                    w.mul_t_vec_acc(m, &mut dh_prev[j]);
                }
            }
        }
        dh = dh_prev;
    }

    for (i, node) in g.nodes.iter().enumerate() {
        let dz: Vec<f64> = dh[i]
            .iter()
            .zip(&fwd.pre[0][i])
            .map(|(&g, &z)| if z > 0.0 { g } else { 0.0 })
            .collect();
        let glin = if node.kind.is_wearer() {
            &mut grad.input_wearer
        } else {
            &mut grad.input_visible
        };
        for (b, &g) in glin.bias.iter_mut().zip(&dz) {
            *b += g;
        }
        glin.weight.add_outer(&dz, &fwd.inputs[i]);
    }

    if cfg.l2_weight > 0.0 {
        let theta = p.flatten();
        let mut flat = grad.flatten();
        for (g, t) in flat.iter_mut().zip(&theta) {
            *g += cfg.l2_weight * t;
        }
        grad.assign(&flat)?;
    }

    Ok((value, grad))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EpochStats {
    /// Mean objective over the training graphs after the epoch's updates.
    pub loss: f64,
    /// Pooled AP over all training nodes, `None` without positives.
    pub train_ap: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrainHistory {
    pub epochs: Vec<EpochStats>,
    /// Epoch (0-based) whose parameters were returned; `None` means the
    /// initial parameters were never improved upon.
    pub best_epoch: Option<usize>,
    pub final_params: ModelParams,
}

fn evaluate(graphs: &[HeteroGraph], p: &ModelParams, cfg: &ModelConfig) -> Result<EpochStats> {
    let mut total = 0.0;
    let mut pairs = Vec::new();
    for g in graphs {
        let labels = graph_labels(g)?;
        let logits = forward(g, p, cfg)?;
        total += bce_loss(&logits, &labels)?;
        pairs.extend(logits.iter().zip(&labels).map(|(&z, &y)| (z, y > 0.5)));
    }
    Ok(EpochStats {
        loss: total / graphs.len() as f64 + l2_penalty(p, cfg.l2_weight),
        train_ap: average_precision(&pairs).ok(),
    })
}

/// Full-batch gradient descent with momentum, one step per graph per epoch in
/// a seeded shuffled order. Returns the parameters with the lowest epoch loss.
pub fn train(graphs: &[HeteroGraph], cfg: &ModelConfig) -> Result<(ModelParams, TrainHistory)> {
    cfg.validate()?;
    if graphs.is_empty() {
        return Err(Error::NoLabeledGraphs);
    }
    if graphs.iter().any(|g| !g.is_labeled()) {
        return Err(Error::Unlabeled);
    }

    let mut params = init_params(cfg)?;
    let mut velocity = vec![0.0; params.len()];
    let mut flat = params.flatten();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    rng.set_stream(1);

    let mut best = (evaluate(graphs, &params, cfg)?.loss, params.clone(), None);
    let mut order: Vec<usize> = (0..graphs.len()).collect();
    let mut epochs = Vec::with_capacity(cfg.epochs);

    for epoch in 0..cfg.epochs {
        order.shuffle(&mut rng);
        for &gi in &order {
            let (_, grad) = backward(&graphs[gi], &params, cfg)?;
            for ((v, t), g) in velocity.iter_mut().zip(flat.iter_mut()).zip(grad.flatten()) {
                *v = MOMENTUM * *v + g;
                *t -= cfg.learning_rate * *v;
            }
            params.assign(&flat)?;
        }
        let stats = evaluate(graphs, &params, cfg)?;
        if !stats.loss.is_finite() {
            return Err(Error::InvalidInput(format!("loss diverged at epoch {epoch}")));
        }
        if stats.loss < best.0 {
            best = (stats.loss, params.clone(), Some(epoch));
        }
        epochs.push(stats);
    }

    let history = TrainHistory {
        epochs,
        best_epoch: best.2,
        final_params: params,
    };
    Ok((best.1, history))
}

/// Human-readable parameter summary, mostly for diagnostics.
pub fn describe(p: &ModelParams) -> String {
    let mut s = String::new();
    p.visit(|name, r, c, _| s.push_str(&format!("{name} {r}x{c}\n")));
    s
}

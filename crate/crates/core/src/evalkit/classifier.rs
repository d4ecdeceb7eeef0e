//! One-hidden-layer MLP probe trained with Adam and early stopping on dev
//! accuracy, in the style of the SentEval classifier.

use ndarray::{Array1, Array2, ArrayView2, Axis};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct ClassifierConfig {
    pub hidden: usize,
    pub batch_size: usize,
    pub learning_rate: f64,
    pub max_epochs: usize,
    /// Epochs without dev improvement before stopping.
    pub patience: usize,
    pub seed: u64,
}

impl Default for ClassifierConfig {
    fn default() -> Self {
        Self {
            hidden: 50,
            batch_size: 64,
            learning_rate: 1e-3,
            max_epochs: 50,
            patience: 5,
            seed: 1034,
        }
    }
}

#[derive(Debug, Clone)]
pub struct Mlp {
    w1: Array2<f64>,
    b1: Array1<f64>,
    w2: Array2<f64>,
    b2: Array1<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrainReport {
    pub epochs_run: usize,
    pub best_epoch: usize,
    /// Percent.
    pub best_dev_accuracy: f64,
    pub final_loss: f64,
}

struct Adam {
    m: Vec<Array2<f64>>,
    v: Vec<Array2<f64>>,
    step: i32,
    lr: f64,
}

const BETA1: f64 = 0.9;
const BETA2: f64 = 0.999;
const EPS: f64 = 1e-8;

impl Adam {
    fn new(shapes: &[(usize, usize)], lr: f64) -> Self {
        Self {
            m: shapes.iter().map(|&s| Array2::zeros(s)).collect(),
            v: shapes.iter().map(|&s| Array2::zeros(s)).collect(),
            step: 0,
            lr,
        }
    }

    fn update(&mut self, params: [&mut Array2<f64>; 4], grads: [Array2<f64>; 4]) {
        self.step += 1;
        let c1 = 1.0 - BETA1.powi(self.step);
        let c2 = 1.0 - BETA2.powi(self.step);
        for (i, (p, g)) in params.into_iter().zip(grads).enumerate() {
            let m = &mut self.m[i];
            let v = &mut self.v[i];
            ndarray::Zip::from(p).and(m).and(v).and(&g).for_each(|p, m, v, &g| {
                *m = BETA1 * *m + (1.0 - BETA1) * g;
                *v = BETA2 * *v + (1.0 - BETA2) * g * g;
                *p -= self.lr * (*m / c1) / ((*v / c2).sqrt() + EPS);
            });
        }
    }
}

impl Mlp {
    /// Uniform(-1/sqrt(fan_in), 1/sqrt(fan_in)) for weights and biases.
    fn init(inputs: usize, hidden: usize, classes: usize, rng: &mut ChaCha8Rng) -> Self {
        let mut uniform = |rows: usize, cols: usize, fan_in: usize| {
            let bound = 1.0 / (fan_in as f64).sqrt();
            Array2::from_shape_simple_fn((rows, cols), || rng.random_range(-bound..bound))
        };
        let w1 = uniform(inputs, hidden, inputs);
        let b1 = uniform(1, hidden, inputs).remove_axis(Axis(0));
        let w2 = uniform(hidden, classes, hidden);
        let b2 = uniform(1, classes, hidden).remove_axis(Axis(0));
        Self { w1, b1, w2, b2 }
    }

    pub fn input_dim(&self) -> usize {
        self.w1.nrows()
    }

    pub fn classes(&self) -> usize {
        self.w2.ncols()
    }

    fn hidden(&self, x: &ArrayView2<f64>) -> Array2<f64> {
        let mut h = x.dot(&self.w1) + &self.b1;
        h.mapv_inplace(|v| v.max(0.0));
        h
    }

    pub fn logits(&self, x: &ArrayView2<f64>) -> Array2<f64> {
        self.hidden(x).dot(&self.w2) + &self.b2
    }

    pub fn predict(&self, x: &Array2<f64>) -> Vec<usize> {
        self.logits(&x.view())
            .axis_iter(Axis(0))
            .map(|row| {
                row.iter()
                    .enumerate()
                    .fold(
                        (0, f64::NEG_INFINITY),
                        |best, (i, &v)| if v > best.1 { (i, v) } else { best },
                    )
                    .0
            })
            .collect()
    }

    /// Percent correct.
    pub fn accuracy(&self, x: &Array2<f64>, y: &[usize]) -> f64 {
        accuracy(&self.predict(x), y)
    }

    /// Mean cross-entropy and its gradients for `(w1, b1, w2, b2)`; biases
    /// are returned as `1 × n` matrices.
    fn loss_and_gradients(&self, x: &ArrayView2<f64>, y: &[usize]) -> (f64, [Array2<f64>; 4]) {
        let batch = x.nrows() as f64;
        let h = self.hidden(x);
        let mut probs = h.dot(&self.w2) + &self.b2;
        let mut loss = 0.0;
        for (mut row, &label) in probs.axis_iter_mut(Axis(0)).zip(y) {
            let max = row.fold(f64::NEG_INFINITY, |m, &v| m.max(v));
            let shifted = row[label] - max;
            row.mapv_inplace(|v| (v - max).exp());
            let total = row.sum();
            row /= total;
            // log-softmax form: stays finite for confident rows, NaN if logits overflowed
            loss += total.ln() - shifted;
        }
        loss /= batch;

        // d(loss)/d(logits) = (softmax - onehot) / batch
        let mut dlogits = probs;
        for (mut row, &label) in dlogits.axis_iter_mut(Axis(0)).zip(y) {
            row[label] -= 1.0;
        }
        dlogits /= batch;

        let dw2 = h.t().dot(&dlogits);
        let db2 = dlogits.sum_axis(Axis(0)).insert_axis(Axis(0));
        let mut dh = dlogits.dot(&self.w2.t());
        ndarray::Zip::from(&mut dh).and(&h).for_each(|g, &a| {
            if a <= 0.0 {
                *g = 0.0;
            }
        });
        let dw1 = x.t().dot(&dh);
        let db1 = dh.sum_axis(Axis(0)).insert_axis(Axis(0));
        (loss, [dw1, db1, dw2, db2])
    }

    /// One Adam step on a mini-batch; returns the mean cross-entropy.
    fn step(&mut self, x: &ArrayView2<f64>, y: &[usize], opt: &mut Adam) -> f64 {
        let (loss, grads) = self.loss_and_gradients(x, y);
        let mut b1 = self.b1.clone().insert_axis(Axis(0));
        let mut b2 = self.b2.clone().insert_axis(Axis(0));
        opt.update([&mut self.w1, &mut b1, &mut self.w2, &mut b2], grads);
        self.b1 = b1.remove_axis(Axis(0));
        self.b2 = b2.remove_axis(Axis(0));
        loss
    }
}

pub fn accuracy(predicted: &[usize], y: &[usize]) -> f64 {
    if y.is_empty() {
        return 0.0;
    }
    let hits = predicted.iter().zip(y).filter(|(p, t)| p == t).count();
    100.0 * hits as f64 / y.len() as f64
}

/// Trains on `(train_x, train_y)`, keeping the parameters from the epoch with
/// the best dev accuracy. With an empty dev split, train accuracy is used.
pub fn train_classifier(
    train_x: &Array2<f64>,
    train_y: &[usize],
    dev_x: &Array2<f64>,
    dev_y: &[usize],
    classes: usize,
    config: &ClassifierConfig,
) -> Result<(Mlp, TrainReport)> {
    if train_x.nrows() != train_y.len() || train_x.nrows() == 0 {
        return Err(Error::InvalidConfig(
            "training features and labels disagree or are empty".into(),
        ));
    }
    if dev_x.nrows() != dev_y.len() || (dev_x.nrows() > 0 && dev_x.ncols() != train_x.ncols()) {
        return Err(Error::InvalidConfig("dev features and labels disagree".into()));
    }
    if train_y.iter().chain(dev_y).any(|&l| l >= classes) {
        return Err(Error::InvalidConfig("label out of range".into()));
    }
    if train_x.iter().any(|v| !v.is_finite()) {
        return Err(Error::NonFinite("training features"));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut model = Mlp::init(train_x.ncols(), config.hidden, classes, &mut rng);
    let mut opt = Adam::new(
        &[model.w1.dim(), (1, model.b1.len()), model.w2.dim(), (1, model.b2.len())],
        config.learning_rate,
    );

    let use_dev = dev_x.nrows() > 0;
    let mut order: Vec<usize> = (0..train_x.nrows()).collect();
    let mut best = model.clone();
    let mut report = TrainReport {
        epochs_run: 0,
        best_epoch: 0,
        best_dev_accuracy: f64::NEG_INFINITY,
        final_loss: f64::NAN,
    };
    let mut stale = 0;
    for epoch in 1..=config.max_epochs {
        order.shuffle(&mut rng);
        let mut epoch_loss = 0.0;
        let mut batches = 0;
        for chunk in order.chunks(config.batch_size.max(1)) {
            let xb = train_x.select(Axis(0), chunk);
            let yb: Vec<usize> = chunk.iter().map(|&i| train_y[i]).collect();
            let loss = model.step(&xb.view(), &yb, &mut opt);
            if !loss.is_finite() {
                return Err(Error::Diverged { epoch, loss });
            }
            epoch_loss += loss;
            batches += 1;
        }
        report.epochs_run = epoch;
        report.final_loss = epoch_loss / batches as f64;

        let score = if use_dev {
            model.accuracy(dev_x, dev_y)
        } else {
            model.accuracy(train_x, train_y)
        };
        if score > report.best_dev_accuracy {
            report.best_dev_accuracy = score;
            report.best_epoch = epoch;
            best = model.clone();
            stale = 0;
        } else {
            stale += 1;
            if stale >= config.patience {
                break;
            }
        }
    }
    Ok((best, report))
}

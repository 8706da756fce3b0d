//! Random transition systems for fuzzing and property tests.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::lts::{Label, Lts};

#[derive(Clone, Debug)]
pub struct LtsParams {
    pub states: usize,
    pub actions: usize,
    /// Fraction of the `states²` ordered pairs that carry an edge.
    pub density: f64,
    /// Minimum fraction of edges labelled τ.
    pub tau_fraction: f64,
    /// Only emit edges from lower to higher state indices.
    pub acyclic: bool,
    pub tau_free: bool,
}

impl Default for LtsParams {
    fn default() -> Self {
        LtsParams {
            states: 5,
            actions: 2,
            density: 0.35,
            tau_fraction: 0.3,
            acyclic: false,
            tau_free: false,
        }
    }
}

/// Draws a system with `round(density · states²)` distinct edges (capped by
/// the number of available slots), at least `ceil(tau_fraction · edges)` of
/// them internal unless `tau_free` is set. Visible actions are named `a`,
/// `b`, `c`, … (`x8`, `x9`, … beyond `h`).
pub fn random_lts<R: Rng + ?Sized>(rng: &mut R, params: &LtsParams) -> Lts {
    let n = params.states.max(1);
    let actions = params.actions.max(1);
    let mut pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|s| (0..n).map(move |t| (s, t)))
        .filter(|&(s, t)| !params.acyclic || s < t)
        .collect();
    pairs.shuffle(rng);
    let wanted = ((params.density * (n * n) as f64).round() as usize).min(pairs.len());
    pairs.truncate(wanted);

    let tau_edges = if params.tau_free {
        0
    } else {
        (params.tau_fraction * wanted as f64).ceil() as usize
    };

    let mut b = Lts::builder(n);
    let ids: Vec<_> = (0..actions)
        .map(|i| {
            b.action(&action_name(i))
                .expect("generated names are valid")
        })
        .collect();
    for (i, &(s, t)) in pairs.iter().enumerate() {
        let label = if i < tau_edges || (!params.tau_free && rng.gen_bool(0.2)) {
            Label::Tau
        } else {
            Label::Visible(ids[rng.gen_range(0..actions)])
        };
        b.add_transition(s, label, t);
    }
    b.build().expect("generated indices are in range")
}

fn action_name(i: usize) -> String {
    // stays clear of the reserved name `i`
    if i < 8 {
        ((b'a' + i as u8) as char).to_string()
    } else {
        format!("x{i}")
    }
}

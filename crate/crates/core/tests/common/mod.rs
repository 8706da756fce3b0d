#![allow(dead_code)]

use std::path::PathBuf;

use contrasim::ingest::{expand_ccs_roots, parse_aut, parse_ccs};
use contrasim::random::{random_lts, LtsParams};
use contrasim::{Label, Lts, StateSet};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(name)
}

/// Expands the named definitions of a fixture into one shared system.
pub fn ccs_fixture(name: &str, roots: &[&str]) -> (Lts, Vec<usize>) {
    let text = std::fs::read_to_string(fixture_path(name)).unwrap();
    let program = parse_ccs(&text).unwrap();
    expand_ccs_roots(&program, roots, 10_000).unwrap()
}

pub fn aut_fixture(name: &str) -> Lts {
    let text = std::fs::read_to_string(fixture_path(name)).unwrap();
    parse_aut(&text).unwrap().0
}

pub struct Philosophers {
    pub lts: Lts,
    pub pc: usize,
    pub pp: usize,
}

pub fn philosophers() -> Philosophers {
    let (lts, roots) = ccs_fixture("phil.ccs", &["Pc", "Pp"]);
    Philosophers {
        lts,
        pc: roots[0],
        pp: roots[1],
    }
}

/// The fuzzing corpus: small systems with at least 30 % internal edges.
pub fn corpus(seed: u64, count: usize) -> Vec<Lts> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let params = LtsParams {
                states: rng.gen_range(1..=6),
                actions: rng.gen_range(1..=2),
                density: rng.gen_range(0.2..=0.5),
                tau_fraction: rng.gen_range(0.3..=0.6),
                ..LtsParams::default()
            };
            random_lts(&mut rng, &params)
        })
        .collect()
}

pub fn tau_free_corpus(seed: u64, count: usize) -> Vec<Lts> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let params = LtsParams {
                states: rng.gen_range(1..=6),
                actions: rng.gen_range(1..=2),
                density: rng.gen_range(0.2..=0.5),
                tau_free: true,
                ..LtsParams::default()
            };
            random_lts(&mut rng, &params)
        })
        .collect()
}

pub fn acyclic_corpus(seed: u64, count: usize) -> Vec<Lts> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let params = LtsParams {
                states: rng.gen_range(1..=6),
                actions: rng.gen_range(1..=2),
                density: rng.gen_range(0.2..=0.5),
                tau_fraction: rng.gen_range(0.3..=0.6),
                acyclic: true,
                ..LtsParams::default()
            };
            random_lts(&mut rng, &params)
        })
        .collect()
}

/// All `q'` with `q ⇒w q'`, found by enumerating transition paths of the raw
/// edge list. Only terminates on acyclic systems.
pub fn literal_weak_word_steps(lts: &Lts, q: usize, word: &[Label]) -> StateSet {
    fn walk(lts: &Lts, s: usize, word: &[Label], out: &mut StateSet) {
        if word.is_empty() {
            out.insert(s);
        }
        for &(src, label, dst) in lts.transitions() {
            if src != s {
                continue;
            }
            if label == Label::Tau {
                walk(lts, dst, word, out);
            } else if Some(&label) == word.first() {
                walk(lts, dst, &word[1..], out);
            }
        }
    }
    let mut out = lts.empty_set();
    walk(lts, q, word, &mut out);
    out
}

/// Every word over the visible actions of length at most `max_len`.
pub fn words_up_to(lts: &Lts, max_len: usize) -> Vec<Vec<Label>> {
    let letters: Vec<Label> = lts.actions().map(Label::Visible).collect();
    let mut all = vec![Vec::new()];
    let mut layer = vec![Vec::new()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &layer {
            for &a in &letters {
                let mut w2: Vec<Label> = w.clone();
                w2.push(a);
                next.push(w2);
            }
        }
        all.extend(next.iter().cloned());
        layer = next;
    }
    all
}

pub fn has_cycle(lts: &Lts) -> bool {
    // Kahn's algorithm leaves states on a cycle unprocessed
    let n = lts.state_count();
    let mut indegree = vec![0usize; n];
    for &(_, _, t) in lts.transitions() {
        indegree[t] += 1;
    }
    let mut ready: Vec<usize> = (0..n).filter(|&s| indegree[s] == 0).collect();
    let mut done = 0;
    while let Some(s) = ready.pop() {
        done += 1;
        for &(src, _, t) in lts.transitions() {
            if src == s {
                indegree[t] -= 1;
                if indegree[t] == 0 {
                    ready.push(t);
                }
            }
        }
    }
    done < n
}

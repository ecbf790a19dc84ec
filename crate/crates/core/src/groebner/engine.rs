//! Homogeneous Buchberger with the normal selection strategy and the
//! Gebauer–Möller pair criteria, on vectors kept sorted in the active term
//! order.
//!
//! Everything is processed degree by degree: input elements that must be in
//! the basis (`base`), then the S-pairs, then the candidate generators whose
//! minimality is being tracked. A candidate that reduces to zero at its turn
//! lies in the submodule generated by everything of lower degree plus the
//! degree-mates already accepted, so the accepted candidates form a minimal
//! generating set of `(base + cands) / base`.

use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;

use crate::field::PrimeField;
use crate::monomial::Monomial;

use super::vector::{Grading, Term, TermOrder};

pub(crate) type Vector = Vec<Term>;

#[derive(Debug, Clone)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    deg: i64,
    alive: bool,
}

/// A growing Gröbner basis together with its pair queue.
#[derive(Clone, Debug)]
pub(crate) struct Engine {
    field: PrimeField,
    pub(crate) order: Arc<TermOrder>,
    pub(crate) grading: Arc<Grading>,
    pub(crate) basis: Vec<Vector>,
    /// `false` once a later element's lead divides this lead.
    live: Vec<bool>,
    by_pos: HashMap<u32, Vec<usize>>,
    pairs: Vec<Pair>,
    pairs_by_pos: HashMap<u32, Vec<usize>>,
    queue: BTreeSet<(i64, usize)>,
    product_criterion: bool,
}

impl Engine {
    pub(crate) fn new(field: PrimeField, order: Arc<TermOrder>, grading: Arc<Grading>) -> Self {
        let product_criterion = order.rank() == 1;
        Engine {
            field,
            order,
            grading,
            basis: Vec::new(),
            live: Vec::new(),
            by_pos: HashMap::new(),
            pairs: Vec::new(),
            pairs_by_pos: HashMap::new(),
            queue: BTreeSet::new(),
            // Buchberger's coprime-lead criterion is only valid for ideals.
            product_criterion,
        }
    }

    /// Builds a reducer from elements already known to form a Gröbner basis.
    pub(crate) fn from_basis(
        field: PrimeField,
        order: Arc<TermOrder>,
        grading: Arc<Grading>,
        basis: Vec<Vector>,
    ) -> Self {
        let mut e = Engine::new(field, order, grading);
        for mut v in basis {
            e.make_monic(&mut v);
            let k = e.basis.len();
            e.by_pos.entry(v[0].pos).or_default().push(k);
            e.basis.push(v);
            e.live.push(true);
        }
        e
    }

    #[inline]
    pub(crate) fn degree_of(&self, v: &[Term]) -> i64 {
        self.grading.term_degree(&v[0])
    }

    fn find_reducer(&self, lead: &Term) -> Option<usize> {
        let cands = self.by_pos.get(&lead.pos)?;
        cands
            .iter()
            .copied()
            .find(|&k| self.basis[k][0].mono.divides(&lead.mono))
    }

    /// `v - c·q·g`, with `v` and `g` given without their (cancelling) leads.
    fn sub_mul(&self, v: &[Term], c: u32, q: &Monomial, g: &[Term]) -> Vector {
        let f = self.field;
        let negc = f.neg(c);
        let mut out = Vec::with_capacity(v.len() + g.len());
        let mut i = 0;
        let mut j = 0;
        let mut pending: Option<Term> = None;
        loop {
            if pending.is_none() && j < g.len() {
                pending = Some(Term {
                    pos: g[j].pos,
                    mono: g[j].mono.mul(q),
                    coef: f.mul(g[j].coef, negc),
                });
                j += 1;
            }
            match (i < v.len(), pending.take()) {
                (false, None) => break,
                (true, None) => {
                    out.extend_from_slice(&v[i..]);
                    break;
                }
                (false, Some(t)) => out.push(t),
                (true, Some(t)) => match self.order.cmp(&v[i], &t) {
                    std::cmp::Ordering::Greater => {
                        out.push(v[i].clone());
                        i += 1;
                        pending = Some(t);
                    }
                    std::cmp::Ordering::Less => out.push(t),
                    std::cmp::Ordering::Equal => {
                        let c = f.add(v[i].coef, t.coef);
                        if c != 0 {
                            out.push(Term {
                                coef: c,
                                ..t
                            });
                        }
                        i += 1;
                    }
                },
            }
        }
        out
    }

    /// Reduces the lead term until it is irreducible.
    pub(crate) fn top_reduce(&self, mut v: Vector) -> Vector {
        while let Some(lead) = v.first() {
            let Some(k) = self.find_reducer(lead) else {
                break;
            };
            let g = &self.basis[k];
            let q = g[0].mono.quotient_of(&lead.mono);
            v = self.sub_mul(&v[1..], lead.coef, &q, &g[1..]);
        }
        v
    }

    /// Full normal form: no term divisible by a lead term.
    pub(crate) fn full_reduce(&self, v: Vector) -> Vector {
        let mut out = Vec::new();
        let mut cur = v;
        let mut start = 0;
        while start < cur.len() {
            let lead = &cur[start];
            if let Some(k) = self.find_reducer(lead) {
                let g = &self.basis[k];
                let q = g[0].mono.quotient_of(&lead.mono);
                cur = self.sub_mul(&cur[start + 1..], lead.coef, &q, &g[1..]);
                start = 0;
            } else {
                out.push(cur[start].clone());
                start += 1;
            }
        }
        out
    }

    /// Full reduction that also records the quotients: returns the remainder
    /// and `(basis index, coefficient, monomial)` triples with
    /// `v = Σ c·m·basis[k] + remainder`.
    pub(crate) fn reduce_with_quotients(&self, v: Vector) -> (Vector, Vec<(usize, u32, Monomial)>) {
        let mut out = Vec::new();
        let mut quots = Vec::new();
        let mut cur = v;
        let mut start = 0;
        while start < cur.len() {
            let lead = &cur[start];
            if let Some(k) = self.find_reducer(lead) {
                let g = &self.basis[k];
                let c = self.field.mul(lead.coef, self.field.inv(g[0].coef));
                let q = g[0].mono.quotient_of(&lead.mono);
                quots.push((k, c, q.clone()));
                cur = self.sub_mul(&cur[start + 1..], c, &q, &g[1..]);
                start = 0;
            } else {
                out.push(cur[start].clone());
                start += 1;
            }
        }
        (out, quots)
    }

    fn make_monic(&self, v: &mut Vector) {
        let c = v[0].coef;
        if c != 1 {
            let ci = self.field.inv(c);
            for t in v.iter_mut() {
                t.coef = self.field.mul(t.coef, ci);
            }
        }
    }

    fn lead_lcm(&self, a: usize, b: usize) -> Monomial {
        self.basis[a][0]
            .mono
            .lcm(&self.basis[b][0].mono, &self.order.weights)
    }

    /// Inserts a nonzero, top-reduced element and updates the pair set.
    pub(crate) fn insert(&mut self, mut h: Vector) {
        self.make_monic(&mut h);
        let k = self.basis.len();
        let pos = h[0].pos;
        let lead_h = h[0].mono.clone();
        self.basis.push(h);
        self.live.push(true);

        let same_pos: Vec<usize> = self
            .by_pos
            .get(&pos)
            .map(|v| v.iter().copied().filter(|&j| self.live[j]).collect())
            .unwrap_or_default();

        // New pairs (Gebauer–Möller: M and F criteria, then product criterion).
        let cand: Vec<(usize, Monomial, bool)> = same_pos
            .iter()
            .map(|&j| {
                let l = self.lead_lcm(j, k);
                let coprime =
                    self.product_criterion && self.basis[j][0].mono.is_coprime(&lead_h);
                (j, l, coprime)
            })
            .collect();
        let mut kept: Vec<usize> = Vec::new();
        for (idx, (_, l, coprime)) in cand.iter().enumerate() {
            let dominated = !coprime
                && (cand[idx + 1..].iter().any(|(_, l2, _)| l2.divides(l))
                    || kept.iter().any(|&d| cand[d].1.divides(l)));
            if !dominated {
                kept.push(idx);
            }
        }

        // Chain criterion on old pairs.
        if let Some(old) = self.pairs_by_pos.get(&pos) {
            for &s in old {
                let p = &self.pairs[s];
                if !p.alive || !lead_h.divides(&p.lcm) {
                    continue;
                }
                let li = self.lead_lcm(p.i, k);
                let lj = self.lead_lcm(p.j, k);
                if li != p.lcm && lj != p.lcm {
                    let deg = p.deg;
                    self.pairs[s].alive = false;
                    self.queue.remove(&(deg, s));
                }
            }
        }

        for idx in kept {
            let (j, ref l, coprime) = cand[idx];
            if coprime {
                continue;
            }
            let t = Term {
                pos,
                mono: l.clone(),
                coef: 1,
            };
            let deg = self.grading.term_degree(&t);
            let s = self.pairs.len();
            self.pairs.push(Pair {
                i: j,
                j: k,
                lcm: l.clone(),
                deg,
                alive: true,
            });
            self.pairs_by_pos.entry(pos).or_default().push(s);
            self.queue.insert((deg, s));
        }
        if let Some(list) = self.pairs_by_pos.get_mut(&pos) {
            let pairs = &self.pairs;
            list.retain(|&s| pairs[s].alive);
        }

        for &j in &same_pos {
            if lead_h.divides(&self.basis[j][0].mono) {
                self.live[j] = false;
            }
        }
        self.by_pos.entry(pos).or_default().push(k);
    }

    fn spoly(&self, p: &Pair) -> Vector {
        let gi = &self.basis[p.i];
        let gj = &self.basis[p.j];
        let qi = gi[0].mono.quotient_of(&p.lcm);
        let qj = gj[0].mono.quotient_of(&p.lcm);
        let a: Vector = gi[1..]
            .iter()
            .map(|t| Term {
                pos: t.pos,
                mono: t.mono.mul(&qi),
                coef: t.coef,
            })
            .collect();
        self.sub_mul(&a, 1, &qj, &gj[1..])
    }

    /// S-vector of basis elements `i` and `j` (same lead position), with the
    /// two cofactors.
    pub(crate) fn spoly_indices(&self, i: usize, j: usize) -> (Monomial, Monomial, Vector) {
        let lcm = self.lead_lcm(i, j);
        let qi = self.basis[i][0].mono.quotient_of(&lcm);
        let qj = self.basis[j][0].mono.quotient_of(&lcm);
        let p = Pair {
            i,
            j,
            lcm,
            deg: 0,
            alive: true,
        };
        (qi, qj, self.spoly(&p))
    }

    pub(crate) fn field(&self) -> PrimeField {
        self.field
    }

    fn next_pair_degree(&self) -> Option<i64> {
        self.queue.first().map(|&(d, _)| d)
    }

    /// Runs Buchberger on `base` and `cands` (each sorted descending, nonzero,
    /// homogeneous). Returns the indices of candidates that were accepted as
    /// minimal generators. Stops after degree `bound` if given.
    pub(crate) fn run(&mut self, base: Vec<Vector>, cands: Vec<Vector>, bound: Option<i64>) -> Vec<usize> {
        let mut base: Vec<(i64, usize, Vector)> = base
            .into_iter()
            .enumerate()
            .filter(|(_, v)| !v.is_empty())
            .map(|(i, v)| (self.degree_of(&v), i, v))
            .collect();
        base.sort_by_key(|(d, i, _)| (*d, *i));
        let mut cands: Vec<(i64, usize, Vector)> = cands
            .into_iter()
            .enumerate()
            .filter(|(_, v)| !v.is_empty())
            .map(|(i, v)| (self.degree_of(&v), i, v))
            .collect();
        cands.sort_by_key(|(d, i, _)| (*d, *i));

        let mut base = base.into_iter().peekable();
        let mut cands = cands.into_iter().peekable();
        let mut minimal = Vec::new();
        loop {
            let d = [
                base.peek().map(|x| x.0),
                self.next_pair_degree(),
                cands.peek().map(|x| x.0),
            ]
            .into_iter()
            .flatten()
            .min();
            let Some(d) = d else { break };
            if bound.is_some_and(|b| d > b) {
                break;
            }
            while base.peek().is_some_and(|x| x.0 == d) {
                let (_, _, v) = base.next().unwrap();
                let r = self.top_reduce(v);
                if !r.is_empty() {
                    self.insert(r);
                }
            }
            while let Some(&(pd, s)) = self.queue.first() {
                if pd != d {
                    break;
                }
                self.queue.pop_first();
                let pair = self.pairs[s].clone();
                if !pair.alive {
                    continue;
                }
                self.pairs[s].alive = false;
                let r = self.top_reduce(self.spoly(&pair));
                if !r.is_empty() {
                    self.insert(r);
                }
            }
            while cands.peek().is_some_and(|x| x.0 == d) {
                let (_, idx, v) = cands.next().unwrap();
                let r = self.top_reduce(v);
                if !r.is_empty() {
                    self.insert(r);
                    minimal.push(idx);
                }
            }
        }
        minimal
    }

    /// The reduced Gröbner basis: minimal leads, monic, tails fully reduced.
    pub(crate) fn reduced_basis(&self) -> Vec<Vector> {
        let live: Vec<usize> = (0..self.basis.len()).filter(|&k| self.live[k]).collect();
        let reducer = Engine::from_basis(
            self.field,
            self.order.clone(),
            self.grading.clone(),
            live.iter().map(|&k| self.basis[k].clone()).collect(),
        );
        live.iter()
            .map(|&k| {
                let g = &self.basis[k];
                let mut out = vec![g[0].clone()];
                out.extend(reducer.full_reduce(g[1..].to_vec()));
                out
            })
            .collect()
    }
}

//! Presentations of module-finite algebras and modules over the source of a
//! ring map: `ψ_*M` for `ψ: A → B`, Frobenius pushforwards `F^e_*M`, and the
//! relative Frobenius `A = S ⊗_R F^e_*R → F^e_*S`.
//!
//! Everything runs in `T = F_p[z, a]` where `z` are the variables of `B` and
//! `a` those of `A`, weighted so that `a_j` and `ψ(a_j)` share a degree. The
//! submodule
//!
//! ```text
//! L = J_B·e + rel(M) + (a_j − ψ_j)·e + (m_i e_k − E_{ik})
//! ```
//!
//! of `T^g ⊕ T^{gs}` is computed under a block order that ranks the
//! `M`-positions above the new positions `E` and eliminates `z`; the
//! `z`-free part of the basis living on `E` presents `ψ_*M`.

use std::sync::Arc;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::groebner::{FreeModuleElement, GroebnerBasis, TermOrder};
use crate::module::FiniteModule;
use crate::monomial::{Monomial, MonomialOrder};
use crate::poly::{Degree, PolyRing, Polynomial};
use crate::ring::GradedQuotientRing;
use crate::ringmap::RingMap;

/// `ψ_*M` as an `A`-module, together with the data needed to rewrite elements
/// of `M` in its generators.
#[derive(Clone, Debug)]
pub struct Pushforward {
    map: RingMap,
    source_module: FiniteModule,
    gens: Vec<Monomial>,
    module: FiniteModule,
    t_ring: Arc<PolyRing>,
    gb: GroebnerBasis,
}

impl Pushforward {
    /// The map `A → B`.
    pub fn map(&self) -> &RingMap {
        &self.map
    }

    /// The pushed-forward module over `A`. Generator `k·s + i` is
    /// `gens[i]·e_k`.
    pub fn module(&self) -> &FiniteModule {
        &self.module
    }

    /// The `B`-module that was pushed forward.
    pub fn source_module(&self) -> &FiniteModule {
        &self.source_module
    }

    pub fn generator_monomials(&self) -> &[Monomial] {
        &self.gens
    }

    fn nb(&self) -> usize {
        self.map.target().nvars()
    }

    /// Writes an element of `M` (a vector over `B`'s ambient ring) in the
    /// generators of [`Pushforward::module`].
    pub fn express(&self, v: &FreeModuleElement) -> Result<FreeModuleElement> {
        let nb = self.nb();
        let b_map: Vec<usize> = (0..nb).collect();
        let lifted = v.map_variables(&self.t_ring, &b_map);
        let nf = self.gb.normal_form(&lifted);
        let g = self.source_module.num_generators() as u32;
        let a_amb = self.map.source().ambient();
        let mut back = vec![0usize; self.t_ring.nvars()];
        for j in 0..a_amb.nvars() {
            back[nb + j] = j;
        }
        for t in nf.terms() {
            if t.pos < g || t.mono.exponents()[..nb].iter().any(|&e| e > 0) {
                return Err(Error::NotModuleFinite(format!(
                    "{} has no expression in the generators",
                    v.display(self.map.target().ambient())
                )));
            }
        }
        let shifted = nf.map_positions(self.t_ring.characteristic(), |q| Some(q - g));
        let out = shifted.map_variables(a_amb, &back);
        Ok(self.map.source().reduce_vector(&out))
    }

    /// [`Pushforward::express`] for an element of `B` itself (rank one).
    pub fn express_poly(&self, b: &Polynomial) -> Result<FreeModuleElement> {
        self.express(&FreeModuleElement::from_poly_at(b, 0))
    }
}

/// Checks that `gens·e_k` span `M/ψ(m_A)M`; returns a witness otherwise.
fn check_module_finite(
    psi: &RingMap,
    m: &FiniteModule,
    gens: &[Monomial],
) -> Result<()> {
    let b = psi.target();
    let amb = b.ambient();
    let g = m.num_generators();
    let mut rels = m.relations().to_vec();
    for k in 0..g {
        for img in psi.images().iter().filter(|f| !f.is_zero()) {
            rels.push(FreeModuleElement::from_poly_at(img, k));
        }
    }
    let fiber = FiniteModule::new(b, m.degrees().to_vec(), rels)?;
    let Some(basis) = fiber.k_basis() else {
        let missing = (0..amb.nvars())
            .find(|&i| {
                (0..g).any(|k| {
                    (1..64u64).all(|e| {
                        !fiber.is_zero_element(&FreeModuleElement::from_poly_at(
                            &Polynomial::var(amb, i).pow(e),
                            k,
                        ))
                    })
                })
            })
            .map_or("a variable".to_string(), |i| amb.names()[i].clone());
        return Err(Error::NotModuleFinite(format!("every power of {missing}")));
    };
    // coordinates of the normal forms in the standard-term basis
    let index = |t: &crate::groebner::Term| {
        basis
            .iter()
            .position(|b| b.terms()[0].pos == t.pos && b.terms()[0].mono == t.mono)
            .expect("normal forms are supported on standard terms")
    };
    let f = amb.field();
    let mut rows: Vec<Vec<u32>> = Vec::new();
    for k in 0..g {
        for mono in gens {
            let v = FreeModuleElement::from_poly_at(&Polynomial::term(amb, mono.clone(), 1), k);
            let nf = fiber.reduce(&v);
            let mut row = vec![0u32; basis.len()];
            for t in nf.terms() {
                row[index(t)] = t.coef;
            }
            rows.push(row);
        }
    }
    let pivots = echelon_pivots(f, &mut rows);
    if let Some(missing) = (0..basis.len()).find(|c| !pivots.contains(c)) {
        return Err(Error::NotModuleFinite(
            basis[missing].display(amb).to_string(),
        ));
    }
    Ok(())
}

/// Row-reduces in place and returns the pivot columns.
fn echelon_pivots(f: crate::field::PrimeField, rows: &mut [Vec<u32>]) -> Vec<usize> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(pr) = (r..rows.len()).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(r, pr);
        let inv = f.inv(rows[r][c]);
        for x in rows[r].iter_mut() {
            *x = f.mul(*x, inv);
        }
        for i in 0..rows.len() {
            if i != r && rows[i][c] != 0 {
                let factor = rows[i][c];
                for j in 0..ncols {
                    let sub = f.mul(factor, rows[r][j]);
                    rows[i][j] = f.sub(rows[i][j], sub);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// `ψ_*M` for a module-finite `ψ: A → B` and a `B`-module `M`, generated by
/// `gens[i]·e_k`.
pub fn pushforward_of_module(
    psi: &RingMap,
    m: &FiniteModule,
    gens: &[Monomial],
) -> Result<Pushforward> {
    let a = psi.source();
    let b = psi.target();
    if m.ring().ambient() != b.ambient() {
        return Err(Error::Algebra(crate::error::AlgebraError::AmbientMismatch));
    }
    check_module_finite(psi, m, gens)?;

    let (nb, na) = (b.nvars(), a.nvars());
    let c = psi.degree_scale();
    let bamb = b.ambient();
    let aamb = a.ambient();
    let t_ring = PolyRing::new(
        bamb.field(),
        bamb.names()
            .iter()
            .map(|n| format!("z.{n}"))
            .zip(bamb.weights().iter().copied())
            .chain(
                aamb.names()
                    .iter()
                    .map(|n| format!("a.{n}"))
                    .zip(aamb.weights().iter().map(|w| w * c)),
            ),
    )?;
    let p = t_ring.characteristic();
    let b_map: Vec<usize> = (0..nb).collect();
    let to_t_b = |f: &Polynomial| f.map_variables(&t_ring, &b_map);

    let g = m.num_generators();
    let s = gens.len();
    let mut degrees = m.degrees().to_vec();
    for k in 0..g {
        for mono in gens {
            degrees.push(bamb.monomial_degree(mono) + m.degrees()[k]);
        }
    }
    let mut blocks = vec![1u32; g];
    blocks.extend(std::iter::repeat(0).take(g * s));
    let mut mask = vec![true; nb];
    mask.extend(std::iter::repeat(false).take(na));
    let order = TermOrder::with_blocks(&t_ring, MonomialOrder::Eliminate(mask), &degrees, &blocks);

    let mut lgens: Vec<FreeModuleElement> = Vec::new();
    for r in m.relations() {
        lgens.push(r.map_variables(&t_ring, &b_map));
    }
    let jb = b.ideal().polynomials();
    for k in 0..g {
        for f in &jb {
            lgens.push(FreeModuleElement::from_poly_at(&to_t_b(f), k));
        }
        for (j, img) in psi.images().iter().enumerate() {
            let aj = Polynomial::var(&t_ring, nb + j);
            lgens.push(FreeModuleElement::from_poly_at(&(&aj - &to_t_b(img)), k));
        }
        for (i, mono) in gens.iter().enumerate() {
            let mt = Polynomial::term(&t_ring, t_ring.monomial(&pad(mono.exponents(), na)), 1);
            let v = FreeModuleElement::from_poly_at(&mt, k);
            let e = FreeModuleElement::basis(&t_ring, g + k * s + i);
            lgens.push(v.sub(p, &e));
        }
    }
    let gb = GroebnerBasis::compute_with_order(&t_ring, &degrees, &lgens, order, None)?;

    let mut back = vec![0usize; nb + na];
    for j in 0..na {
        back[nb + j] = j;
    }
    let a_relations: Vec<FreeModuleElement> = gb
        .generators()
        .into_iter()
        .filter(|v| {
            v.terms()
                .iter()
                .all(|t| t.pos as usize >= g && t.mono.exponents()[..nb].iter().all(|&e| e == 0))
        })
        .map(|v| {
            v.map_positions(p, |q| Some(q - g as u32))
                .map_variables(aamb, &back)
        })
        .collect();
    let a_degrees: Vec<Degree> = degrees[g..].iter().map(|d| d / c).collect();
    let module = FiniteModule::new(a, a_degrees, a_relations)?;
    Ok(Pushforward {
        map: psi.clone(),
        source_module: m.clone(),
        gens: gens.to_vec(),
        module,
        t_ring,
        gb,
    })
}

fn pad(exps: &[u16], extra: usize) -> Vec<u16> {
    let mut v = exps.to_vec();
    v.extend(std::iter::repeat(0).take(extra));
    v
}

/// `B` as a module over `A` via `ψ`, generated by the given monomials of `B`.
pub fn pushforward_module(psi: &RingMap, gens: &[Monomial]) -> Result<Pushforward> {
    let m = FiniteModule::free(psi.target(), vec![Degree::zero()]);
    pushforward_of_module(psi, &m, gens)
}

/// Monomials `x^a` with `0 ≤ a_i < q`, by degree then degrevlex descending.
pub fn frobenius_generators(ring: &PolyRing, q: u64) -> Vec<Monomial> {
    let n = ring.nvars();
    let mut out = Vec::new();
    let mut exps = vec![0u16; n];
    loop {
        out.push(ring.monomial(&exps));
        let mut i = 0;
        while i < n {
            exps[i] += 1;
            if (exps[i] as u64) < q {
                break;
            }
            exps[i] = 0;
            i += 1;
        }
        if i == n {
            break;
        }
    }
    out.sort_by(|a, b| {
        a.scaled_degree()
            .cmp(&b.scaled_degree())
            .then_with(|| MonomialOrder::DegRevLex.compare(b, a, ring.int_weights()))
    });
    out
}

/// `F^e_*S` as an `S`-module.
pub fn frobenius_pushforward(ring: &Arc<GradedQuotientRing>, e: u32) -> Result<Pushforward> {
    let frob = RingMap::frobenius(ring, e)?;
    let q = (ring.characteristic() as u64).pow(e);
    let gens = frobenius_generators(frob.target().ambient(), q);
    pushforward_module(&frob, &gens)
}

/// `F^e_*M` as an `S`-module, for an `S`-module `M`.
pub fn frobenius_pushforward_of_module(m: &FiniteModule, e: u32) -> Result<Pushforward> {
    let ring = m.ring();
    let frob = RingMap::frobenius(ring, e)?;
    let q = (ring.characteristic() as u64).pow(e);
    let target = frob.target();
    let degrees = m.degrees().iter().map(|d| d / Degree::from_integer(q as i64)).collect();
    let rels = m
        .relations()
        .iter()
        .map(|r| r.reinterpret(target.ambient()))
        .collect();
    let m2 = FiniteModule::new(target, degrees, rels)?;
    let gens = frobenius_generators(target.ambient(), q);
    pushforward_of_module(&frob, &m2, &gens)
}

/// The relative Frobenius of `φ: R → S`.
#[derive(Clone, Debug)]
pub struct RelativeFrobenius {
    /// `A = F_p[x, y']/(I(x) + J(y') + (φ(y_j)(x) − y'_j^{p^e}))`.
    pub a: Arc<GradedQuotientRing>,
    /// `A → F^e_*S`, written with target `S''`.
    pub f_rel: RingMap,
    /// `F^e_*S` as an `A`-module.
    pub pushforward: Pushforward,
    pub e: u32,
}

impl RelativeFrobenius {
    pub fn module(&self) -> &FiniteModule {
        self.pushforward.module()
    }
}

/// Builds `A`, `F_{S/R}` and the `A`-module `F^e_*S` for `φ: R → S`, and
/// checks that the Frobenius square commutes.
pub fn relative_frobenius(phi: &RingMap, e: u32) -> Result<RelativeFrobenius> {
    let r = phi.source();
    let s = phi.target();
    let q = (s.characteristic() as u64).pow(e);
    let (ns, nr) = (s.nvars(), r.nvars());
    let c = phi.degree_scale();
    let samb = s.ambient();
    let ramb = r.ambient();
    let a_amb = PolyRing::new(
        samb.field(),
        samb.names()
            .iter()
            .cloned()
            .zip(samb.weights().iter().copied())
            .chain(
                ramb.names()
                    .iter()
                    .map(|n| format!("{n}'"))
                    .zip(ramb.weights().iter().map(|w| w * c / Degree::from_integer(q as i64))),
            ),
    )?;
    let x_map: Vec<usize> = (0..ns).collect();
    let y_map: Vec<usize> = (ns..ns + nr).collect();
    let mut gens: Vec<Polynomial> = s
        .ideal_generators()
        .iter()
        .map(|f| f.map_variables(&a_amb, &x_map))
        .collect();
    gens.extend(r.ideal_generators().iter().map(|f| f.map_variables(&a_amb, &y_map)));
    for (j, img) in phi.images().iter().enumerate() {
        let yq = Polynomial::var(&a_amb, ns + j).pow(q);
        gens.push(&img.map_variables(&a_amb, &x_map) - &yq);
    }
    let a = GradedQuotientRing::new(&a_amb, &gens)?;

    let frob_s = RingMap::frobenius(s, e)?;
    let s2 = frob_s.target().clone();
    let mut images: Vec<Polynomial> = (0..ns)
        .map(|i| Polynomial::var(s2.ambient(), i).pow(q))
        .collect();
    images.extend(phi.images().iter().map(|f| f.reinterpret(s2.ambient())));
    let f_rel = RingMap::new(&a, &s2, images)?;

    // S → A → S'' is the Frobenius of S, and R → A → S'' is F ∘ φ
    let s_to_a = RingMap::new(s, &a, (0..ns).map(|i| a.var(i)).collect())?;
    let r_to_a = RingMap::new(
        r,
        &a,
        phi.images().iter().map(|f| f.map_variables(&a_amb, &x_map)).collect(),
    )?;
    let left = f_rel.compose_after(&s_to_a)?;
    let right = f_rel.compose_after(&r_to_a)?;
    let frob_phi = frob_s.compose_after(phi)?;
    if !left.agrees_with(&frob_s) || !right.agrees_with(&frob_phi) {
        return Err(Error::Precondition(
            "the relative Frobenius square does not commute".into(),
        ));
    }

    let gens = frobenius_generators(s2.ambient(), q);
    let pushforward = pushforward_module(&f_rel, &gens)?;
    Ok(RelativeFrobenius {
        a,
        f_rel,
        pushforward,
        e,
    })
}

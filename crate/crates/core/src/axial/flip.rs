// SPDX-License-Identifier: Apache-2.0
//! Automorphisms and isomorphisms determined by the images of generators.

use crate::algebra::{homomorphism_failure, is_bijective, Algebra, Element, LinearMap};
use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::linalg::{axpy, is_zero_vec, Matrix, Vector};

/// Reduced spanning vectors paired with their prescribed images.
struct Extension {
    rows: Vec<(usize, Vector, Vector)>,
}

impl Extension {
    /// Adds (s, t) to the partial map; returns Ok(true) if s was new, Err if s is dependent but t disagrees.
    fn insert(&mut self, mut s: Vector, mut t: Vector) -> std::result::Result<bool, ()> {
        for (p, r, rho) in &self.rows {
            let c = s[*p].clone();
            if !c.is_zero() {
                let m = -c;
                axpy(&mut s, &m, r);
                axpy(&mut t, &m, rho);
            }
        }
        let Some(p) = s.iter().position(|x| !x.is_zero()) else {
            return if is_zero_vec(&t) { Ok(false) } else { Err(()) };
        };
        let inv = s[p].inv().expect("nonzero pivot");
        let s: Vector = s.iter().map(|x| x * &inv).collect();
        let t: Vector = t.iter().map(|x| x * &inv).collect();
        self.rows.push((p, s, t));
        Ok(true)
    }
}

/// The linear map f with f(g_k) = h_k extended multiplicatively along products of the generators.
///
/// Products of spanning words are explored breadth first; each dependent product must map to the
/// matching combination of images. The result is checked to be a homomorphism on all basis pairs.
pub fn extend_along_words(src: &Algebra, gens: &[Element], tgt: &Algebra, images: &[Element]) -> Result<LinearMap> {
    let n = src.dim();
    // Values of spanning words in the source and target.
    let mut words: Vec<(Vector, Vector)> = Vec::new();
    let mut ext = Extension { rows: Vec::new() };
    let ill = |what: &str| Error::NoIso(format!("ill-defined on {what}"));
    for (g, h) in gens.iter().zip(images) {
        match ext.insert(g.clone(), h.clone()) {
            Ok(true) => words.push((g.clone(), h.clone())),
            Ok(false) => {}
            Err(()) => return Err(ill("a generator")),
        }
    }
    let mut next = 0;
    while next < words.len() {
        // Multiply the word at `next` with every earlier word (and itself).
        let (u, x) = words[next].clone();
        for k in 0..=next {
            let s = src.mul(&u, &words[k].0);
            let t = tgt.mul(&x, &words[k].1);
            match ext.insert(s.clone(), t.clone()) {
                Ok(true) => words.push((s, t)),
                Ok(false) => {}
                Err(()) => return Err(ill(&format!("the product of words {k} and {next}"))),
            }
        }
        next += 1;
    }
    if ext.rows.len() < n {
        return Err(Error::NotGenerating(ext.rows.len(), n));
    }
    let f = src.field();
    let rcols: Vec<Vector> = ext.rows.iter().map(|(_, r, _)| r.clone()).collect();
    let icols: Vec<Vector> = ext.rows.iter().map(|(_, _, t)| t.clone()).collect();
    let r = Matrix::from_cols(f, n, &rcols)?;
    let img = Matrix::from_cols(f, tgt.dim(), &icols)?;
    let map = img.mul(&r.inverse().expect("spanning set"))?;
    if let Some((i, j)) = homomorphism_failure(src, tgt, &map) {
        return Err(Error::NotAutomorphism(i, j));
    }
    Ok(map)
}

/// The automorphism swapping a0 and a1, if one exists.
pub fn find_flip(alg: &Algebra, a0: &[Scalar], a1: &[Scalar]) -> Result<LinearMap> {
    let gens = [a0.to_vec(), a1.to_vec()];
    let imgs = [a1.to_vec(), a0.to_vec()];
    let theta = match extend_along_words(alg, &gens, alg, &imgs) {
        Ok(m) => m,
        Err(Error::NotGenerating(k, n)) => return Err(Error::NotGenerating(k, n)),
        Err(Error::NotAutomorphism(i, j)) => {
            return Err(Error::NoFlip(format!("product of basis vectors ({i}, {j}) is not preserved")))
        }
        Err(Error::NoIso(why)) => return Err(Error::NoFlip(why)),
        Err(e) => return Err(e),
    };
    if !theta.mul(&theta)?.is_identity() {
        return Err(Error::NoFlip("the candidate is not an involution".into()));
    }
    Ok(theta)
}

/// An isomorphism src → tgt with g_k ↦ h_k, when the generators determine one.
pub fn isomorphism_from_generators(src: &Algebra, gens: &[Element], tgt: &Algebra, images: &[Element]) -> Result<LinearMap> {
    if src.dim() != tgt.dim() || src.field() != tgt.field() {
        return Err(Error::NoIso(format!("dimensions {} and {} over {} and {}", src.dim(), tgt.dim(), src.field(), tgt.field())));
    }
    let map = match extend_along_words(src, gens, tgt, images) {
        Ok(m) => m,
        Err(Error::NotAutomorphism(i, j)) => {
            return Err(Error::NoIso(format!("product of basis vectors ({i}, {j}) is not preserved")))
        }
        Err(e) => return Err(e),
    };
    if !is_bijective(&map) {
        return Err(Error::NoIso("the homomorphism is not bijective".into()));
    }
    Ok(map)
}

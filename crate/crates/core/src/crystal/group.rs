use std::collections::VecDeque;
use std::fmt;

use num_traits::{ToPrimitive, Zero};

use super::character::{Character, Orbit};
use super::point::{IntMatrix, PointGroup, PointSubgroup};
use super::word::Word;
use crate::error::{invariant, Result};
use crate::numerics::{Turn, Q};

/// Element i(n)·γ(d) of the crystallographic group.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GElement {
    pub n: Vec<i64>,
    pub d: usize,
}

impl GElement {
    pub fn new(n: Vec<i64>, d: usize) -> GElement {
        GElement { n, d }
    }
}

impl fmt::Display for GElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?}; {})", self.n, self.d)
    }
}

/// Where a datum problem lives: a top-level key or an entry of a table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Anchor {
    Key(String),
    Entry(String, String),
}

/// A load-time validation failure.
#[derive(Clone, Debug)]
pub struct Issue {
    pub anchor: Anchor,
    pub msg: String,
}

impl Issue {
    fn key(k: &str, msg: impl Into<String>) -> Issue {
        Issue { anchor: Anchor::Key(k.into()), msg: msg.into() }
    }

    fn entry(t: &str, k: &str, msg: impl Into<String>) -> Issue {
        Issue { anchor: Anchor::Entry(t.into(), k.into()), msg: msg.into() }
    }
}

/// Unvalidated ingredients of a crystallographic group.
#[derive(Clone, Debug)]
pub struct GroupParts {
    pub name: String,
    pub point: PointGroup,
    /// Section translation t_d per point element.
    pub section: Vec<Vec<Q>>,
    /// Generator name, lattice shift, point element.
    pub generators: Vec<(String, Vec<i64>, usize)>,
    pub relators: Vec<String>,
    pub n_generators: Vec<String>,
}

/// 1 → ℤ^r → G → D → 1 realised by affine maps (M_d | n + t_d).
#[derive(Clone, Debug)]
pub struct CrystalGroup {
    name: String,
    point: PointGroup,
    section: Vec<Vec<Q>>,
    nu: Vec<Vec<i64>>,
    // M_hk·ν(h,k) = t_h + M_h t_k − t_hk, the term that enters the product.
    nu_pushed: Vec<Vec<i64>>,
    inv_action: Vec<IntMatrix>,
    generators: Vec<(String, GElement)>,
    relators: Vec<(String, Word)>,
    n_generators: Vec<(String, Word)>,
    point_words: Vec<(Word, GElement)>,
}

impl CrystalGroup {
    pub fn new(parts: GroupParts) -> std::result::Result<CrystalGroup, Issue> {
        let GroupParts { name, point, section, generators, relators, n_generators } = parts;
        let r = point.dim();
        let order = point.order();
        if section.len() != order {
            return Err(Issue::key("section", format!("expected {order} translations, found {}", section.len())));
        }
        for (d, t) in section.iter().enumerate() {
            if t.len() != r {
                return Err(Issue::entry("section", point.name(d), format!("expected {r} components")));
            }
        }
        if section[0].iter().any(|x| !x.is_zero()) {
            return Err(Issue::entry("section", point.name(0), "the section must be normalized: t_e = 0"));
        }

        let mut nu = Vec::with_capacity(order * order);
        let mut nu_pushed = Vec::with_capacity(order * order);
        let inv_action: Vec<IntMatrix> = (0..order).map(|d| point.action(point.inv(d)).clone()).collect();
        for h in 0..order {
            for k in 0..order {
                let hk = point.mul(h, k);
                let mh = point.action(h);
                let mut pushed = Vec::with_capacity(r);
                for i in 0..r {
                    let mut v = section[h][i] - section[hk][i];
                    for j in 0..r {
                        v += Q::from_integer(mh.get(i, j) as i128) * section[k][j];
                    }
                    if !v.is_integer() {
                        return Err(Issue::entry(
                            "section",
                            point.name(h),
                            format!(
                                "invalid vector system: factor set at ({}, {}) has non-integral component {v}",
                                point.name(h),
                                point.name(k)
                            ),
                        ));
                    }
                    pushed.push(v.to_integer().to_i64().unwrap_or(i64::MAX));
                }
                nu.push(inv_action[hk].apply(&pushed));
                nu_pushed.push(pushed);
            }
        }

        let mut gens: Vec<(String, GElement)> = Vec::new();
        for (g, shift, d) in generators {
            if gens.iter().any(|(h, _)| *h == g) {
                return Err(Issue::entry("generators", &g, "duplicate generator"));
            }
            if shift.len() != r || d >= order {
                return Err(Issue::entry("generators", &g, format!("needs a {r}-component lattice shift and a valid point")));
            }
            gens.push((g, GElement::new(shift, d)));
        }

        let mut group = CrystalGroup {
            name,
            point,
            section,
            nu,
            nu_pushed,
            inv_action,
            generators: gens,
            relators: Vec::new(),
            n_generators: Vec::new(),
            point_words: Vec::new(),
        };

        for text in relators {
            let w = Word::parse(&text).map_err(|e| Issue::key("relators", e.to_string()))?;
            group.eval_word(&w).map_err(|e| Issue::key("relators", format!("'{text}': {e}")))?;
            group.relators.push((text, w));
        }
        if n_generators.len() != r {
            return Err(Issue::key("n_generators", format!("expected {r} lattice generator words")));
        }
        for (j, text) in n_generators.into_iter().enumerate() {
            let w = Word::parse(&text).map_err(|e| Issue::key("n_generators", e.to_string()))?;
            let v = group.eval_word(&w).map_err(|e| Issue::key("n_generators", format!("'{text}': {e}")))?;
            let mut ej = vec![0; r];
            ej[j] = 1;
            if v != GElement::new(ej, 0) {
                return Err(Issue::key(
                    "n_generators",
                    format!("word '{text}' evaluates to {v}, not lattice basis vector {}", j + 1),
                ));
            }
            group.n_generators.push((text, w));
        }
        group.point_words = group.point_word_table().map_err(|m| Issue::key("generators", m))?;
        Ok(group)
    }

    // BFS over D by right multiplication with generators; shortest words, generator order breaks ties.
    fn point_word_table(&self) -> std::result::Result<Vec<(Word, GElement)>, String> {
        let order = self.point.order();
        let mut found: Vec<Option<(Vec<usize>, GElement)>> = vec![None; order];
        found[0] = Some((Vec::new(), self.identity()));
        let mut queue = VecDeque::from([0usize]);
        while let Some(d) = queue.pop_front() {
            let (path, val) = found[d].clone().expect("queued elements are found");
            for (gi, (_, g)) in self.generators.iter().enumerate() {
                let next = self.point.mul(d, g.d);
                if found[next].is_none() {
                    let mut p = path.clone();
                    p.push(gi);
                    found[next] = Some((p, self.mul(&val, g)));
                    queue.push_back(next);
                }
            }
        }
        found
            .into_iter()
            .enumerate()
            .map(|(d, f)| {
                let (path, val) = f.ok_or_else(|| format!("generators do not reach point element '{}'", self.point.name(d)))?;
                let text: Vec<&str> = path.iter().map(|&i| self.generators[i].0.as_str()).collect();
                let word = Word::parse(&text.join(" ")).map_err(|e| e.to_string())?;
                Ok((word, val))
            })
            .collect()
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.point.dim()
    }

    pub fn point(&self) -> &PointGroup {
        &self.point
    }

    pub fn section(&self, d: usize) -> &[Q] {
        &self.section[d]
    }

    /// ν(h,k) ∈ ℤ^r with γ(h)γ(k) = γ(hk)·i(ν(h,k)).
    pub fn nu(&self, h: usize, k: usize) -> &[i64] {
        &self.nu[h * self.point.order() + k]
    }

    /// Full factor-set table indexed [h][k].
    pub fn factor_set(&self) -> Vec<Vec<Vec<i64>>> {
        let n = self.point.order();
        (0..n).map(|h| (0..n).map(|k| self.nu(h, k).to_vec()).collect()).collect()
    }

    pub fn action(&self, d: usize) -> &IntMatrix {
        self.point.action(d)
    }

    pub fn inv_action(&self, d: usize) -> &IntMatrix {
        &self.inv_action[d]
    }

    pub fn identity(&self) -> GElement {
        GElement::new(vec![0; self.dim()], 0)
    }

    pub fn gamma(&self, d: usize) -> GElement {
        GElement::new(vec![0; self.dim()], d)
    }

    pub fn lattice(&self, n: Vec<i64>) -> GElement {
        GElement::new(n, 0)
    }

    pub fn lattice_basis(&self, j: usize) -> GElement {
        let mut n = vec![0; self.dim()];
        n[j] = 1;
        GElement::new(n, 0)
    }

    pub fn mul(&self, x: &GElement, y: &GElement) -> GElement {
        let m = self.point.action(x.d).apply(&y.n);
        let p = &self.nu_pushed[x.d * self.point.order() + y.d];
        let n = (0..self.dim()).map(|i| x.n[i] + m[i] + p[i]).collect();
        GElement::new(n, self.point.mul(x.d, y.d))
    }

    pub fn inv(&self, x: &GElement) -> GElement {
        let di = self.point.inv(x.d);
        let p = &self.nu_pushed[x.d * self.point.order() + di];
        let s: Vec<i64> = (0..self.dim()).map(|i| x.n[i] + p[i]).collect();
        let n = self.inv_action[x.d].apply(&s).into_iter().map(|v| -v).collect();
        GElement::new(n, di)
    }

    /// The affine map (M_d | n + t_d) realising x.
    pub fn affine(&self, x: &GElement) -> (IntMatrix, Vec<Q>) {
        let t = (0..self.dim()).map(|i| self.section[x.d][i] + Q::from_integer(x.n[i] as i128)).collect();
        (self.point.action(x.d).clone(), t)
    }

    pub fn generators(&self) -> &[(String, GElement)] {
        &self.generators
    }

    pub fn generator(&self, name: &str) -> Option<&GElement> {
        self.generators.iter().find(|(g, _)| g == name).map(|(_, x)| x)
    }

    pub fn eval_word(&self, w: &Word) -> Result<GElement> {
        w.eval(self.identity(), |g| self.generator(g).cloned(), |x| self.inv(x), |x, y| self.mul(x, y))
    }

    pub fn relators(&self) -> &[(String, Word)] {
        &self.relators
    }

    pub fn n_generators(&self) -> &[(String, Word)] {
        &self.n_generators
    }

    /// A generator word w_d with its value i(m_d)γ(d); γ(d) = i(−m_d)·w_d.
    pub fn point_word(&self, d: usize) -> &(Word, GElement) {
        &self.point_words[d]
    }

    /// Evaluate every relator word.
    pub fn relator_values(&self) -> Result<Vec<(String, GElement)>> {
        self.relators.iter().map(|(t, w)| Ok((t.clone(), self.eval_word(w)?))).collect()
    }

    /// The dual action (d·χ)(n) = χ(M_d⁻¹ n).
    pub fn dual_action(&self, d: usize, chi: &Character) -> Character {
        let mi = &self.inv_action[d];
        let r = self.dim();
        let u = (0..r)
            .map(|i| (0..r).fold(Turn::zero(), |acc, j| acc * chi.u[j].pow(mi.get(j, i))))
            .collect();
        Character::new(u)
    }

    pub fn stabilizer(&self, chi: &Character) -> PointSubgroup {
        let els = (0..self.point.order()).filter(|&d| self.dual_action(d, chi).coincides(chi)).collect();
        PointSubgroup::new(&self.point, els).expect("a stabilizer is a subgroup")
    }

    /// Orbit in ascending order of coset representatives, with the stabilizer.
    pub fn orbit_stabilizer(&self, chi: &Character) -> Result<Orbit> {
        if chi.dim() != self.dim() {
            return Err(crate::error::input(format!(
                "character has {} coordinates, the lattice has rank {}",
                chi.dim(),
                self.dim()
            )));
        }
        let stabilizer = self.stabilizer(chi);
        let reps = stabilizer.transversal_in(&self.point, &self.point.whole());
        let characters: Vec<Character> = reps.iter().map(|&d| self.dual_action(d, chi)).collect();
        for (i, a) in characters.iter().enumerate() {
            if characters[..i].iter().any(|b| b.coincides(a)) {
                return Err(invariant("orbit listing repeats a character"));
            }
        }
        if characters.len() * stabilizer.order() != self.point.order() {
            return Err(invariant("orbit-stabilizer count mismatch"));
        }
        Ok(Orbit { characters, reps, stabilizer })
    }

    /// Point subgroup from element names.
    pub fn subgroup(&self, names: &[&str]) -> Result<PointSubgroup> {
        let els = names
            .iter()
            .map(|n| self.point.index_of(n).ok_or_else(|| crate::error::input(format!("unknown point element '{n}'"))))
            .collect::<Result<Vec<_>>>()?;
        PointSubgroup::new(&self.point, els).ok_or_else(|| crate::error::input("elements do not form a subgroup"))
    }
}

use std::fmt;

/// Square integer matrix, row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    n: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn identity(n: usize) -> IntMatrix {
        IntMatrix::from_fn(n, |i, j| i64::from(i == j))
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> i64) -> IntMatrix {
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                data.push(f(i, j));
            }
        }
        IntMatrix { n, data }
    }

    /// None when the rows are ragged or not square.
    pub fn from_rows(rows: &[Vec<i64>]) -> Option<IntMatrix> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return None;
        }
        Some(IntMatrix { n, data: rows.concat() })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.data[i * self.n + j]
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        IntMatrix::from_fn(self.n, |i, j| (0..self.n).map(|k| self.get(i, k) * other.get(k, j)).sum())
    }

    pub fn apply(&self, v: &[i64]) -> Vec<i64> {
        (0..self.n).map(|i| (0..self.n).map(|j| self.get(i, j) * v[j]).sum()).collect()
    }

    pub fn transpose(&self) -> IntMatrix {
        IntMatrix::from_fn(self.n, |i, j| self.get(j, i))
    }

    pub fn det(&self) -> i64 {
        det_rec(&self.data, self.n)
    }

    /// Integer inverse, defined when det = ±1.
    pub fn inverse(&self) -> Option<IntMatrix> {
        let d = self.det();
        if d.abs() != 1 {
            return None;
        }
        let n = self.n;
        Some(IntMatrix::from_fn(n, |i, j| {
            // adjugate entry (i, j) = cofactor (j, i)
            let minor: Vec<i64> = (0..n)
                .filter(|&r| r != j)
                .flat_map(|r| (0..n).filter(move |&c| c != i).map(move |c| (r, c)))
                .map(|(r, c)| self.get(r, c))
                .collect();
            let sign = if (i + j) % 2 == 0 { 1 } else { -1 };
            sign * det_rec(&minor, n - 1) * d
        }))
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        self.data.chunks(self.n.max(1)).map(<[i64]>::to_vec).collect()
    }
}

fn det_rec(a: &[i64], n: usize) -> i64 {
    match n {
        0 => 1,
        1 => a[0],
        2 => a[0] * a[3] - a[1] * a[2],
        _ => (0..n)
            .map(|c| {
                let minor: Vec<i64> = (1..n)
                    .flat_map(|r| (0..n).filter(move |&k| k != c).map(move |k| a[r * n + k]))
                    .collect();
                let sign = if c % 2 == 0 { 1 } else { -1 };
                sign * a[c] * det_rec(&minor, n - 1)
            })
            .sum(),
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.rows())
    }
}

/// Finite point group D with its integral action on the lattice. Identity is index 0.
#[derive(Clone, Debug)]
pub struct PointGroup {
    names: Vec<String>,
    mult: Vec<Vec<usize>>,
    inv: Vec<usize>,
    action: Vec<IntMatrix>,
}

impl PointGroup {
    /// Validate the table and action; errors carry the offending element name.
    pub fn new(
        names: Vec<String>,
        mult: Vec<Vec<usize>>,
        action: Vec<IntMatrix>,
    ) -> Result<PointGroup, PointGroupIssue> {
        let n = names.len();
        if n == 0 {
            return Err(PointGroupIssue::Table("empty element list".into()));
        }
        if mult.len() != n || mult.iter().any(|r| r.len() != n || r.iter().any(|&x| x >= n)) {
            return Err(PointGroupIssue::Table(format!("multiplication table must be {n}x{n}")));
        }
        for x in 0..n {
            if mult[0][x] != x || mult[x][0] != x {
                return Err(PointGroupIssue::Table(format!(
                    "first element '{}' is not the identity (row/column of '{}')",
                    names[0], names[x]
                )));
            }
        }
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    if mult[mult[x][y]][z] != mult[x][mult[y][z]] {
                        return Err(PointGroupIssue::Table(format!(
                            "not associative at ({}, {}, {})",
                            names[x], names[y], names[z]
                        )));
                    }
                }
            }
        }
        let mut inv = Vec::with_capacity(n);
        for x in 0..n {
            match (0..n).find(|&y| mult[x][y] == 0) {
                Some(y) if mult[y][x] == 0 => inv.push(y),
                _ => return Err(PointGroupIssue::Table(format!("'{}' has no inverse", names[x]))),
            }
        }
        if action.len() != n {
            return Err(PointGroupIssue::Table("one action matrix per element required".into()));
        }
        let r = action[0].dim();
        for (d, m) in action.iter().enumerate() {
            if m.dim() != r {
                return Err(PointGroupIssue::Action(d, format!("expected a {r}x{r} matrix")));
            }
            if m.det().abs() != 1 {
                return Err(PointGroupIssue::Action(d, format!("determinant {} is not ±1", m.det())));
            }
        }
        if action[0] != IntMatrix::identity(r) {
            return Err(PointGroupIssue::Action(0, "identity must act trivially".into()));
        }
        for x in 0..n {
            for y in 0..n {
                if action[mult[x][y]] != action[x].mul(&action[y]) {
                    return Err(PointGroupIssue::Action(
                        mult[x][y],
                        format!("action is not a homomorphism: M_{}·M_{} differs", names[x], names[y]),
                    ));
                }
            }
        }
        Ok(PointGroup { names, mult, inv, action })
    }

    pub fn order(&self) -> usize {
        self.names.len()
    }

    pub fn dim(&self) -> usize {
        self.action[0].dim()
    }

    pub fn name(&self, d: usize) -> &str {
        &self.names[d]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|s| s == name)
    }

    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.mult[x][y]
    }

    pub fn inv(&self, x: usize) -> usize {
        self.inv[x]
    }

    pub fn action(&self, d: usize) -> &IntMatrix {
        &self.action[d]
    }

    pub fn whole(&self) -> PointSubgroup {
        PointSubgroup::new(self, (0..self.order()).collect()).expect("whole group is a subgroup")
    }

    pub fn trivial(&self) -> PointSubgroup {
        PointSubgroup::new(self, vec![0]).expect("trivial group is a subgroup")
    }
}

/// Validation failures of a point group.
#[derive(Clone, Debug)]
pub enum PointGroupIssue {
    Table(String),
    Action(usize, String),
}

/// A subgroup H ≤ D with local indexing; local 0 is the identity, locals follow ascending global index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointSubgroup {
    elements: Vec<usize>,
    pos: Vec<Option<usize>>,
    mult: Vec<usize>,
    inv: Vec<usize>,
    names: Vec<String>,
    parent_order: usize,
}

impl PointSubgroup {
    /// None unless `elements` is closed under the product and contains the identity.
    pub fn new(d: &PointGroup, mut elements: Vec<usize>) -> Option<PointSubgroup> {
        elements.sort_unstable();
        elements.dedup();
        if elements.first() != Some(&0) || elements.iter().any(|&x| x >= d.order()) {
            return None;
        }
        let mut pos = vec![None; d.order()];
        for (l, &g) in elements.iter().enumerate() {
            pos[g] = Some(l);
        }
        let k = elements.len();
        let mut mult = Vec::with_capacity(k * k);
        for &x in &elements {
            for &y in &elements {
                mult.push(pos[d.mul(x, y)]?);
            }
        }
        let inv = elements.iter().map(|&x| pos[d.inv(x)]).collect::<Option<Vec<_>>>()?;
        let names = elements.iter().map(|&x| d.name(x).to_string()).collect();
        Some(PointSubgroup { elements, pos, mult, inv, names, parent_order: d.order() })
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn global(&self, local: usize) -> usize {
        self.elements[local]
    }

    pub fn local(&self, global: usize) -> Option<usize> {
        self.pos.get(global).copied().flatten()
    }

    pub fn contains(&self, global: usize) -> bool {
        self.local(global).is_some()
    }

    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.mult[x * self.order() + y]
    }

    pub fn inv(&self, x: usize) -> usize {
        self.inv[x]
    }

    pub fn name(&self, local: usize) -> &str {
        &self.names[local]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn parent_order(&self) -> usize {
        self.parent_order
    }

    pub fn is_subset_of(&self, other: &PointSubgroup) -> bool {
        self.elements.iter().all(|&g| other.contains(g))
    }

    /// Left-coset representatives of `self` inside `outer`, smallest global index first in each coset.
    pub fn transversal_in(&self, d: &PointGroup, outer: &PointSubgroup) -> Vec<usize> {
        let mut reps: Vec<usize> = Vec::new();
        for &k in outer.elements() {
            if !reps.iter().any(|&r| self.contains(d.mul(d.inv(r), k))) {
                reps.push(k);
            }
        }
        reps
    }
}

impl fmt::Display for PointSubgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.names.join(","))
    }
}

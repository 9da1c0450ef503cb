//! Pairing diagrams for expected products of Gaussian multilinear forms.
//!
//! Vertices are arranged in rows, one row per factor: row l holds k_l
//! vertices (l, 1), …, (l, k_l). A diagram is a perfect matching on all
//! vertices; the cross-row class Γ additionally forbids edges inside one
//! row, while the relaxed class Γ̄ allows them. The number of relaxed
//! diagrams on 2N vertices is (2N-1)!!.
//!
//! For kernels f_1, …, f_L over a shared finite ground set with atomic
//! measure μ, the diagram value F_γ identifies the two arguments joined by
//! each edge (keeping the variable of the edge's lower endpoint, the one in
//! the larger-indexed row) and sums the product Π f_l over all assignments
//! of ground points to the identified variables, weighted by Π μ. Summing
//! F_γ over the cross-row class gives E Π (k_l! J_{k_l}(f_l)) for the
//! multilinear Gaussian forms J built from the kernels.

use crate::bounds::double_factorial_odd;
use crate::error::{Error, Result};
use crate::form::{for_each_permutation, SymmetricMultilinearForm};

/// Diagram enumeration refuses layouts whose relaxed matching count
/// exceeds this; (2N-1)!! growth makes larger requests hopeless.
pub const DEFAULT_DIAGRAM_BUDGET: u64 = 10_000_000;

/// Row sizes (k₁, …, k_L) of a diagram layout.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RowLayout {
    row_sizes: Vec<usize>,
}

impl RowLayout {
    pub fn new(row_sizes: Vec<usize>) -> Result<Self> {
        if row_sizes.contains(&0) {
            return Err(Error::EmptyRow);
        }
        Ok(Self { row_sizes })
    }

    /// The layout (k, k, …, k) with `rows` rows.
    pub fn equal_rows(k: usize, rows: usize) -> Result<Self> {
        Self::new(vec![k; rows])
    }

    pub fn row_sizes(&self) -> &[usize] {
        &self.row_sizes
    }

    pub fn rows(&self) -> usize {
        self.row_sizes.len()
    }

    pub fn total_vertices(&self) -> usize {
        self.row_sizes.iter().sum()
    }

    /// Row of each vertex in row-major order, the documented vertex
    /// ordering used for enumeration and lower-endpoint numbering.
    fn row_of_flat(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.total_vertices());
        for (row, &size) in self.row_sizes.iter().enumerate() {
            out.extend(std::iter::repeat_n(row, size));
        }
        out
    }

    fn vertex_of_flat(&self, mut flat: usize) -> Vertex {
        for (row, &size) in self.row_sizes.iter().enumerate() {
            if flat < size {
                return Vertex { row, pos: flat };
            }
            flat -= size;
        }
        panic!("flat vertex id out of range");
    }
}

/// Vertex (row, position), both 0-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Vertex {
    pub row: usize,
    pub pos: usize,
}

/// A perfect matching on the layout's vertices. Each edge is stored with
/// its row-major smaller vertex first; for cross-row edges the second
/// vertex is the lower endpoint (the one in the larger-indexed row).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagram {
    layout: RowLayout,
    edges: Vec<(Vertex, Vertex)>,
}

impl Diagram {
    pub fn layout(&self) -> &RowLayout {
        &self.layout
    }

    pub fn edges(&self) -> &[(Vertex, Vertex)] {
        &self.edges
    }

    pub fn is_cross_row(&self) -> bool {
        self.edges.iter().all(|(a, b)| a.row != b.row)
    }

    /// Lower endpoints in row-major order; exactly N = (Σk_l)/2 vertices.
    pub fn lower_endpoints(&self) -> Vec<Vertex> {
        let mut lowers: Vec<Vertex> = self.edges.iter().map(|&(_, b)| b).collect();
        lowers.sort_unstable();
        lowers
    }
}

const UNMATCHED: usize = usize::MAX;

/// Lazily enumerates every perfect matching of the layout exactly once, in
/// lexicographic order of partner choices: the first unmatched vertex is
/// paired with each admissible later vertex in turn.
pub struct DiagramIter {
    layout: RowLayout,
    row_of: Vec<usize>,
    allow_same_row: bool,
    partner: Vec<usize>,
    stack: Vec<(usize, usize)>,
    exhausted: bool,
    emitted_complete: bool,
}

pub fn enumerate_diagrams(layout: &RowLayout, allow_same_row: bool) -> DiagramIter {
    let total = layout.total_vertices();
    DiagramIter {
        row_of: layout.row_of_flat(),
        layout: layout.clone(),
        allow_same_row,
        partner: vec![UNMATCHED; total],
        stack: Vec::with_capacity(total / 2),
        exhausted: !total.is_multiple_of(2),
        emitted_complete: false,
    }
}

impl DiagramIter {
    fn admissible(&self, anchor: usize, candidate: usize) -> bool {
        self.partner[candidate] == UNMATCHED
            && (self.allow_same_row || self.row_of[candidate] != self.row_of[anchor])
    }

    fn first_partner(&self, anchor: usize, from: usize) -> Option<usize> {
        (from..self.partner.len()).find(|&w| self.admissible(anchor, w))
    }

    fn commit(&mut self, anchor: usize, partner: usize) {
        self.partner[anchor] = partner;
        self.partner[partner] = anchor;
        self.stack.push((anchor, partner));
    }

    fn current_diagram(&self) -> Diagram {
        let edges = self
            .stack
            .iter()
            .map(|&(a, b)| (self.layout.vertex_of_flat(a), self.layout.vertex_of_flat(b)))
            .collect();
        Diagram {
            layout: self.layout.clone(),
            edges,
        }
    }

    /// Pop edges until one can advance its partner; false when exhausted.
    fn backtrack(&mut self) -> bool {
        while let Some((anchor, partner)) = self.stack.pop() {
            self.partner[anchor] = UNMATCHED;
            self.partner[partner] = UNMATCHED;
            if let Some(next) = self.first_partner(anchor, partner + 1) {
                self.commit(anchor, next);
                return true;
            }
        }
        false
    }
}

impl Iterator for DiagramIter {
    type Item = Diagram;

    fn next(&mut self) -> Option<Diagram> {
        if self.exhausted {
            return None;
        }
        if self.emitted_complete && !self.backtrack() {
            self.exhausted = true;
            return None;
        }
        loop {
            match self.partner.iter().position(|&p| p == UNMATCHED) {
                None => {
                    self.emitted_complete = true;
                    return Some(self.current_diagram());
                }
                Some(anchor) => match self.first_partner(anchor, anchor + 1) {
                    Some(w) => self.commit(anchor, w),
                    None => {
                        if !self.backtrack() {
                            self.exhausted = true;
                            return None;
                        }
                    }
                },
            }
        }
    }
}

/// Number of diagrams in the layout's class; for equal rows with same-row
/// edges allowed this is exactly (2N-1)!! on 2N vertices.
pub fn count_diagrams(layout: &RowLayout, allow_same_row: bool) -> u64 {
    enumerate_diagrams(layout, allow_same_row).count() as u64
}

/// Real tensor over a finite ground set with an atomic measure.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscreteKernel {
    arity: usize,
    ground_size: usize,
    values: Vec<f64>,
    measure: Vec<f64>,
}

impl DiscreteKernel {
    pub fn new(
        arity: usize,
        ground_size: usize,
        values: Vec<f64>,
        measure: Vec<f64>,
    ) -> Result<Self> {
        let expected = ground_size
            .checked_pow(arity as u32)
            .ok_or(Error::KernelShape {
                expected: usize::MAX,
                found: values.len(),
            })?;
        if values.len() != expected {
            return Err(Error::KernelShape {
                expected,
                found: values.len(),
            });
        }
        if measure.len() != ground_size
            || measure.iter().any(|w| !w.is_finite() || *w < 0.0)
        {
            return Err(Error::BadMeasure);
        }
        Ok(Self {
            arity,
            ground_size,
            values,
            measure,
        })
    }

    /// The arity-1 kernel with a single unit atom; its multilinear form is
    /// a single standard normal.
    pub fn unit_atom() -> Self {
        Self {
            arity: 1,
            ground_size: 1,
            values: vec![1.0],
            measure: vec![1.0],
        }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn ground_size(&self) -> usize {
        self.ground_size
    }

    pub fn measure(&self) -> &[f64] {
        &self.measure
    }

    pub fn value(&self, idx: &[usize]) -> f64 {
        debug_assert_eq!(idx.len(), self.arity);
        let mut flat = 0usize;
        for &i in idx {
            debug_assert!(i < self.ground_size);
            flat = flat * self.ground_size + i;
        }
        self.values[flat]
    }

    fn set_value(&mut self, idx: &[usize], v: f64) {
        let mut flat = 0usize;
        for &i in idx {
            flat = flat * self.ground_size + i;
        }
        self.values[flat] = v;
    }

    /// σ² = Σ f(t₁,…,t_k)² μ(t₁)⋯μ(t_k) over the full tensor.
    pub fn squared_norm(&self) -> f64 {
        let mut idx = vec![0usize; self.arity];
        let mut acc = 0.0;
        loop {
            let f = self.value(&idx);
            if f != 0.0 {
                let weight: f64 = idx.iter().map(|&i| self.measure[i]).product();
                acc += f * f * weight;
            }
            let mut d = self.arity;
            loop {
                if d == 0 {
                    return acc;
                }
                d -= 1;
                idx[d] += 1;
                if idx[d] < self.ground_size {
                    break;
                }
                idx[d] = 0;
            }
        }
    }
}

fn validate_kernels(layout: &RowLayout, kernels: &[DiscreteKernel]) -> Result<()> {
    if kernels.len() != layout.rows() {
        return Err(Error::KernelGroundMismatch);
    }
    for (row, (kernel, &size)) in kernels.iter().zip(layout.row_sizes()).enumerate() {
        if kernel.arity() != size {
            return Err(Error::KernelArityMismatch {
                row,
                expected: size,
                found: kernel.arity(),
            });
        }
        if kernel.ground_size != kernels[0].ground_size || kernel.measure != kernels[0].measure
        {
            return Err(Error::KernelGroundMismatch);
        }
    }
    Ok(())
}

/// F_γ: identify arguments along the edges of γ (each vertex takes the
/// variable of its edge's lower endpoint) and sum the product of kernels
/// over all ground assignments of the N identified variables, weighted by
/// the measure. Lower endpoints are numbered in row-major order; the value
/// does not depend on that numbering.
pub fn f_gamma(gamma: &Diagram, kernels: &[DiscreteKernel]) -> Result<f64> {
    validate_kernels(gamma.layout(), kernels)?;
    Ok(f_gamma_inner(gamma, kernels))
}

fn f_gamma_inner(gamma: &Diagram, kernels: &[DiscreteKernel]) -> f64 {
    let layout = gamma.layout();
    let total = layout.total_vertices();
    let ground = kernels.first().map_or(1, |k| k.ground_size());
    let measure = kernels.first().map_or(&[] as &[f64], |k| k.measure());

    let flat_of = |v: Vertex| -> usize {
        layout.row_sizes()[..v.row].iter().sum::<usize>() + v.pos
    };
    let lowers = gamma.lower_endpoints();
    let slot_count = lowers.len();
    let mut slot_of = vec![usize::MAX; total];
    for (slot, &v) in lowers.iter().enumerate() {
        slot_of[flat_of(v)] = slot;
    }
    for &(a, b) in gamma.edges() {
        slot_of[flat_of(a)] = slot_of[flat_of(b)];
    }

    let mut assignment = vec![0usize; slot_count];
    let mut args = Vec::with_capacity(layout.row_sizes().iter().copied().max().unwrap_or(0));
    let mut acc = 0.0;
    loop {
        let mut weight = 1.0;
        for &x in &assignment {
            weight *= measure[x];
        }
        if weight != 0.0 {
            let mut prod = weight;
            let mut flat = 0usize;
            for (kernel, &size) in kernels.iter().zip(layout.row_sizes()) {
                args.clear();
                for j in 0..size {
                    args.push(assignment[slot_of[flat + j]]);
                }
                prod *= kernel.value(&args);
                flat += size;
            }
            acc += prod;
        }
        let mut d = slot_count;
        loop {
            if d == 0 {
                return acc;
            }
            d -= 1;
            assignment[d] += 1;
            if assignment[d] < ground {
                break;
            }
            assignment[d] = 0;
        }
    }
}

/// E Π_l (k_l! J_{k_l}(f_l)) = Σ over cross-row diagrams of F_γ; zero when
/// the cross-row class is empty (in particular for odd total vertex count
/// or a single factor). Terms accumulate in enumeration order.
pub fn expected_product(kernels: &[DiscreteKernel]) -> Result<f64> {
    let layout = RowLayout::new(kernels.iter().map(|k| k.arity()).collect())?;
    validate_kernels(&layout, kernels)?;
    let mut acc = 0.0;
    for gamma in enumerate_diagrams(&layout, false) {
        acc += f_gamma_inner(&gamma, kernels);
    }
    Ok(acc)
}

/// E (k! J_k(f))^{2M} via the diagram sum with 2M copies of the kernel.
/// Refuses when the projected relaxed diagram count (2kM-1)!! exceeds the
/// default budget.
pub fn chaos_moment_via_diagrams(kernel: &DiscreteKernel, m: u32) -> Result<f64> {
    chaos_moment_via_diagrams_with_budget(kernel, m, DEFAULT_DIAGRAM_BUDGET)
}

/// As [`chaos_moment_via_diagrams`] with an explicit diagram budget.
pub fn chaos_moment_via_diagrams_with_budget(
    kernel: &DiscreteKernel,
    m: u32,
    budget: u64,
) -> Result<f64> {
    if m == 0 {
        return Ok(1.0);
    }
    let df_arg = 2 * kernel.arity() as u64 * u64::from(m) - 1;
    let projected = match double_factorial_odd(df_arg) {
        Ok(count) => count as f64,
        Err(_) => f64::INFINITY,
    };
    if projected > budget as f64 {
        return Err(Error::DiagramBudget { projected, budget });
    }
    let kernels = vec![kernel.clone(); 2 * m as usize];
    expected_product(&kernels)
}

/// Discrete embedding of a sign form: ground set {1..n} with unit atoms,
/// kernel value a(j₁,…,j_k) (absolute value when requested) on tuples of
/// distinct indices and 0 on any tuple with a repeated index. The squared
/// norm equals V² of the form, and the associated Gaussian multilinear
/// form k!·J_k is the comparison variable built from the same
/// coefficients.
pub fn embed_form(form: &SymmetricMultilinearForm, use_absolute_values: bool) -> DiscreteKernel {
    let n = form.dimension();
    let k = form.degree();
    let len = n
        .checked_pow(k as u32)
        .expect("kernel tensor of size n^k fits in memory");
    let mut kernel = DiscreteKernel {
        arity: k,
        ground_size: n,
        values: vec![0.0; len],
        measure: vec![1.0; n],
    };
    let mut idx = vec![0usize; k];
    for (key, value) in form.coefficients() {
        let v = if use_absolute_values { value.abs() } else { value };
        let mut perm: Vec<u32> = key.to_vec();
        for_each_permutation(&mut perm, &mut |p| {
            for (slot, &j) in idx.iter_mut().zip(p) {
                *slot = (j - 1) as usize;
            }
            kernel.set_value(&idx, v);
        });
    }
    kernel
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::distributions::MomentSequence;
    use crate::moment::exact_moment_by_expansion;
    use rand::{RngExt, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn pair_form() -> SymmetricMultilinearForm {
        SymmetricMultilinearForm::from_canonical(2, 2, [(vec![1, 2], 1.0)]).unwrap()
    }

    #[test]
    fn single_edge_layout() {
        let layout = RowLayout::new(vec![1, 1]).unwrap();
        let diagrams: Vec<_> = enumerate_diagrams(&layout, false).collect();
        assert_eq!(diagrams.len(), 1);
        assert_eq!(
            diagrams[0].edges(),
            &[(Vertex { row: 0, pos: 0 }, Vertex { row: 1, pos: 0 })]
        );
        assert!(diagrams[0].is_cross_row());
    }

    #[test]
    fn two_by_two_layout_counts() {
        let layout = RowLayout::new(vec![2, 2]).unwrap();
        let cross: Vec<_> = enumerate_diagrams(&layout, false).collect();
        assert_eq!(cross.len(), 2);
        assert!(cross.iter().all(Diagram::is_cross_row));
        // Lexicographically first: identity pairing of the rows.
        assert_eq!(
            cross[0].edges(),
            &[
                (Vertex { row: 0, pos: 0 }, Vertex { row: 1, pos: 0 }),
                (Vertex { row: 0, pos: 1 }, Vertex { row: 1, pos: 1 }),
            ]
        );
        assert_eq!(count_diagrams(&layout, true), 3);
    }

    #[test]
    fn relaxed_counts_match_double_factorial() {
        for k in 1..=3usize {
            for m in 1..=3usize {
                let layout = RowLayout::equal_rows(k, 2 * m).unwrap();
                let want = double_factorial_odd(2 * (k * m) as u64 - 1).unwrap() as u64;
                assert_eq!(count_diagrams(&layout, true), want, "k={k} m={m}");
                assert!(count_diagrams(&layout, false) <= want);
            }
        }
    }

    #[test]
    fn odd_vertex_count_has_no_diagrams() {
        let layout = RowLayout::new(vec![2, 1]).unwrap();
        assert_eq!(count_diagrams(&layout, true), 0);
        assert_eq!(count_diagrams(&layout, false), 0);
    }

    #[test]
    fn enumeration_is_deterministic_and_duplicate_free() {
        let layout = RowLayout::new(vec![2, 3, 1]).unwrap();
        let first: Vec<_> = enumerate_diagrams(&layout, true).collect();
        let second: Vec<_> = enumerate_diagrams(&layout, true).collect();
        assert_eq!(first, second);
        for i in 0..first.len() {
            for j in (i + 1)..first.len() {
                assert_ne!(first[i], first[j]);
            }
        }
        assert_eq!(first.len() as u64, double_factorial_odd(5).unwrap() as u64);
    }

    #[test]
    fn f_gamma_single_edge_is_inner_product() {
        let layout = RowLayout::new(vec![1, 1]).unwrap();
        let gamma = enumerate_diagrams(&layout, false).next().unwrap();
        let f = DiscreteKernel::new(1, 3, vec![1.0, 2.0, -1.0], vec![1.0, 0.5, 2.0]).unwrap();
        let g = DiscreteKernel::new(1, 3, vec![3.0, 0.0, 1.0], vec![1.0, 0.5, 2.0]).unwrap();
        let want = 1.0 * 3.0 * 1.0 + 2.0 * 0.0 * 0.5 - 1.0 * 1.0 * 2.0;
        assert_eq!(f_gamma(&gamma, &[f, g]).unwrap(), want);
    }

    #[test]
    fn f_gamma_symmetric_kernel_same_on_both_cross_diagrams() {
        let kernel = embed_form(&pair_form(), true);
        let layout = RowLayout::new(vec![2, 2]).unwrap();
        let values: Vec<f64> = enumerate_diagrams(&layout, false)
            .map(|g| f_gamma(&g, &[kernel.clone(), kernel.clone()]).unwrap())
            .collect();
        assert_eq!(values, vec![2.0, 2.0]);
    }

    #[test]
    fn f_gamma_cauchy_schwarz() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..25 {
            let g = 3usize;
            let measure: Vec<f64> = (0..g).map(|_| rng.random::<f64>() + 0.1).collect();
            let mk = |arity: usize, rng: &mut ChaCha8Rng| {
                let len = g.pow(arity as u32);
                let values: Vec<f64> =
                    (0..len).map(|_| rng.random::<f64>() * 4.0 - 2.0).collect();
                DiscreteKernel::new(arity, g, values, measure.clone()).unwrap()
            };
            let kernels = vec![mk(2, &mut rng), mk(1, &mut rng), mk(2, &mut rng), mk(1, &mut rng)];
            let layout = RowLayout::new(vec![2, 1, 2, 1]).unwrap();
            let norm_product: f64 = kernels.iter().map(|k| k.squared_norm()).product();
            for gamma in enumerate_diagrams(&layout, false) {
                let fg = f_gamma(&gamma, &kernels).unwrap();
                assert!(
                    fg * fg <= norm_product * (1.0 + 1e-9),
                    "F_γ² = {} > {}",
                    fg * fg,
                    norm_product
                );
            }
        }
    }

    #[test]
    fn f_gamma_does_not_depend_on_lower_endpoint_numbering() {
        // Re-derive the sum with the slot order reversed.
        let kernel = embed_form(&pair_form(), true);
        let layout = RowLayout::new(vec![2, 2]).unwrap();
        for gamma in enumerate_diagrams(&layout, false) {
            let kernels = [kernel.clone(), kernel.clone()];
            let flat_of = |v: Vertex| -> usize {
                layout.row_sizes()[..v.row].iter().sum::<usize>() + v.pos
            };
            let mut lowers = gamma.lower_endpoints();
            lowers.reverse();
            let mut slot_of = [usize::MAX; 4];
            for (slot, &v) in lowers.iter().enumerate() {
                slot_of[flat_of(v)] = slot;
            }
            for &(a, b) in gamma.edges() {
                slot_of[flat_of(a)] = slot_of[flat_of(b)];
            }
            let g = kernel.ground_size();
            let mut acc = 0.0;
            for x0 in 0..g {
                for x1 in 0..g {
                    let x = [x0, x1];
                    let a0 = [x[slot_of[0]], x[slot_of[1]]];
                    let a1 = [x[slot_of[2]], x[slot_of[3]]];
                    acc += kernels[0].value(&a0) * kernels[1].value(&a1);
                }
            }
            assert_eq!(acc, f_gamma(&gamma, &kernels).unwrap());
        }
    }

    #[test]
    fn expected_product_examples() {
        // A single factor has no cross-row pairing.
        let one = DiscreteKernel::unit_atom();
        assert_eq!(expected_product(std::slice::from_ref(&one)).unwrap(), 0.0);
        // Eη² = 1 and Eη⁴ = 3 from pairings of singleton rows.
        assert_eq!(expected_product(&[one.clone(), one.clone()]).unwrap(), 1.0);
        assert_eq!(
            expected_product(&[one.clone(), one.clone(), one.clone(), one]).unwrap(),
            3.0
        );
    }

    #[test]
    fn chaos_moment_unit_atom_hits_gaussian_moments() {
        let atom = DiscreteKernel::unit_atom();
        for m in 1..=5u32 {
            let want = double_factorial_odd(2 * u64::from(m) - 1).unwrap() as f64;
            assert_eq!(chaos_moment_via_diagrams(&atom, m).unwrap(), want);
        }
    }

    #[test]
    fn chaos_moment_matches_expansion_oracle() {
        let kernel = embed_form(&pair_form(), true);
        assert_eq!(chaos_moment_via_diagrams(&kernel, 1).unwrap(), 4.0);
        assert_eq!(chaos_moment_via_diagrams(&kernel, 2).unwrap(), 144.0);
        let gauss = MomentSequence::gaussian(12);
        let by_expansion = exact_moment_by_expansion(&pair_form().abs(), &gauss, 4).unwrap();
        assert_eq!(by_expansion, 144.0);
    }

    #[test]
    fn diagram_budget_reports_projected_count() {
        let kernel = DiscreteKernel::unit_atom();
        let err = chaos_moment_via_diagrams_with_budget(&kernel, 10, 100).unwrap_err();
        match err {
            Error::DiagramBudget { projected, budget } => {
                assert_eq!(budget, 100);
                assert_eq!(projected, double_factorial_odd(19).unwrap() as f64);
            }
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn embed_form_shape_and_norm() {
        let f1 = SymmetricMultilinearForm::from_canonical(
            1,
            3,
            [(vec![1], 1.0), (vec![2], -2.0), (vec![3], 0.5)],
        )
        .unwrap();
        let k1 = embed_form(&f1, true);
        assert_eq!(k1.value(&[0]), 1.0);
        assert_eq!(k1.value(&[1]), 2.0);
        assert_eq!(k1.value(&[2]), 0.5);

        let f2 =
            SymmetricMultilinearForm::from_canonical(2, 2, [(vec![1, 2], -1.0)]).unwrap();
        let abs = embed_form(&f2, true);
        assert_eq!(abs.value(&[0, 1]), 1.0);
        assert_eq!(abs.value(&[1, 0]), 1.0);
        assert_eq!(abs.value(&[0, 0]), 0.0);
        assert_eq!(abs.value(&[1, 1]), 0.0);
        let signed = embed_form(&f2, false);
        assert_eq!(signed.value(&[0, 1]), -1.0);

        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..20 {
            let n = rng.random_range(2..6usize);
            let k = rng.random_range(1..=2usize.min(n));
            let mut entries = Vec::new();
            crate::distributions::for_each_combination(n, k, &mut |key| {
                entries.push((key.to_vec(), f64::from(rng.random_range(-3i32..=3))));
            });
            let form = SymmetricMultilinearForm::from_canonical(k, n, entries).unwrap();
            let kernel = embed_form(&form, true);
            let v2 = form.v_squared();
            assert!(
                (kernel.squared_norm() - v2).abs() <= 1e-12 * v2.max(1.0),
                "σ² = {} vs V² = {}",
                kernel.squared_norm(),
                v2
            );
        }
    }

    #[test]
    fn kernel_validation_errors() {
        let err = DiscreteKernel::new(2, 2, vec![0.0; 3], vec![1.0, 1.0]).unwrap_err();
        assert!(matches!(err, Error::KernelShape { expected: 4, found: 3 }));
        let err = DiscreteKernel::new(1, 2, vec![0.0; 2], vec![1.0, -1.0]).unwrap_err();
        assert!(matches!(err, Error::BadMeasure));

        let a = DiscreteKernel::unit_atom();
        let b = DiscreteKernel::new(1, 2, vec![1.0, 0.0], vec![1.0, 1.0]).unwrap();
        assert!(matches!(
            expected_product(&[a.clone(), b]),
            Err(Error::KernelGroundMismatch)
        ));
        let layout = RowLayout::new(vec![2, 1]).unwrap();
        let gamma = Diagram {
            layout: layout.clone(),
            edges: vec![],
        };
        assert!(matches!(
            f_gamma(&gamma, &[a.clone(), a]),
            Err(Error::KernelArityMismatch { row: 0, expected: 2, found: 1 })
        ));
    }
}

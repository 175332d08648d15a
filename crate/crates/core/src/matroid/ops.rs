use super::{check_domain, Element, ElementSet, Matroid, MatroidError};

/// Size of a maximum independent subset of `x`, by one greedy sweep
/// (`|x|` oracle calls).
pub fn rank<M: Matroid + ?Sized>(m: &M, x: &[Element]) -> Result<usize, MatroidError> {
    check_domain(m, x)?;
    let mut state = m.incremental();
    Ok(x.iter().filter(|&&e| state.try_add(e)).count())
}

/// `e ∈ span(t)`, i.e. `rank(t ∪ e) == rank(t)`. `t` may be dependent; the
/// sweep first extracts a basis of `t` (at most `|t| + 1` calls).
pub fn in_span<M: Matroid + ?Sized>(m: &M, t: &[Element], e: Element) -> Result<bool, MatroidError> {
    check_domain(m, t)?;
    check_domain(m, &[e])?;
    if t.contains(&e) {
        return Ok(true);
    }
    let mut state = m.incremental();
    for &x in t {
        state.try_add(x);
    }
    Ok(!state.can_add(e))
}

/// `in_span` for a set already known to be independent: one call, asking
/// whether `t ∪ e` is dependent.
pub fn in_span_of_independent<M: Matroid + ?Sized>(
    m: &M,
    t: &ElementSet,
    e: Element,
) -> Result<bool, MatroidError> {
    if t.contains(e) {
        check_domain(m, &[e])?;
        return Ok(true);
    }
    Ok(!m.is_independent(&t.with(e))?)
}

/// The unique circuit of `a ∪ e` for independent `a` with `e ∈ span(a) \ a`.
///
/// `x ∈ a` lies on the circuit iff `(a \ x) ∪ e` is independent, so the scan
/// costs `|a| + 2` calls. Circuit members keep `a`'s order, followed by `e`.
pub fn find_circuit<M: Matroid + ?Sized>(
    m: &M,
    a: &ElementSet,
    e: Element,
) -> Result<ElementSet, MatroidError> {
    check_domain(m, a.as_slice())?;
    check_domain(m, &[e])?;
    if a.contains(e) {
        return Err(MatroidError::NoCircuit("element already belongs to the set"));
    }
    if !m.is_independent(a.as_slice())? {
        return Err(MatroidError::Precondition(
            "circuit search needs an independent base set".into(),
        ));
    }
    let mut with_e = a.with(e);
    if m.is_independent(&with_e)? {
        return Err(MatroidError::NoCircuit("element is not spanned by the set"));
    }
    let mut circuit = ElementSet::new();
    for i in 0..a.len() {
        // swap out position i for e and ask again
        let x = with_e[i];
        with_e[i] = e;
        let without_x = &with_e[..a.len()];
        if m.is_independent(without_x)? {
            circuit.insert(x);
        }
        with_e[i] = x;
    }
    circuit.insert(e);
    Ok(circuit)
}

/// Independence in every matroid of `ms`.
pub fn is_common_independent<M: Matroid + ?Sized>(
    ms: &[&M],
    set: &[Element],
) -> Result<bool, MatroidError> {
    for m in ms {
        if !m.is_independent(set)? {
            return Ok(false);
        }
    }
    Ok(true)
}

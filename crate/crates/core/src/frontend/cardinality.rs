use super::doc::GnfDocument;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    AtMost,
    AtLeast,
    Exactly,
}

/// Adds clauses constraining how many of `lits` are true, using the
/// sequential counter. Auxiliary variables are allocated from `doc`.
pub fn encode_cardinality(doc: &mut GnfDocument, lits: &[i32], k: usize, rel: Relation) {
    match rel {
        Relation::AtMost => at_most(doc, lits, k),
        Relation::AtLeast => at_least(doc, lits, k),
        Relation::Exactly => {
            at_most(doc, lits, k);
            at_least(doc, lits, k);
        }
    }
}

fn at_least(doc: &mut GnfDocument, lits: &[i32], k: usize) {
    if k > lits.len() {
        doc.add_clause(Vec::new());
        return;
    }
    let neg: Vec<i32> = lits.iter().map(|&l| -l).collect();
    at_most(doc, &neg, lits.len() - k);
}

fn at_most(doc: &mut GnfDocument, x: &[i32], k: usize) {
    let n = x.len();
    if k >= n {
        return;
    }
    if k == 0 {
        for &l in x {
            doc.add_clause(vec![-l]);
        }
        return;
    }
    // s[i][j]: at least j+1 of x[0..=i] are true.
    let s: Vec<Vec<i32>> = (0..n - 1)
        .map(|_| (0..k).map(|_| doc.new_var() as i32).collect())
        .collect();
    doc.add_clause(vec![-x[0], s[0][0]]);
    for &aux in &s[0][1..] {
        doc.add_clause(vec![-aux]);
    }
    for i in 1..n - 1 {
        doc.add_clause(vec![-x[i], s[i][0]]);
        doc.add_clause(vec![-s[i - 1][0], s[i][0]]);
        for j in 1..k {
            doc.add_clause(vec![-x[i], -s[i - 1][j - 1], s[i][j]]);
            doc.add_clause(vec![-s[i - 1][j], s[i][j]]);
        }
        doc.add_clause(vec![-x[i], -s[i - 1][k - 1]]);
    }
    doc.add_clause(vec![-x[n - 1], -s[n - 2][k - 1]]);
}

//! Independence oracles: partition, graphic and uniform matroids, rank,
//! span, circuits, contraction and the text format.

use omi::matroid::format::{self, MatroidFile};
use omi::matroid::{contract, find_circuit, in_span, rank, GraphicMatroid, PartitionMatroid, UniformMatroid};
use omi::{Element, ElementSet, Matroid};

fn els(ids: &[usize]) -> Vec<Element> {
    ids.iter().map(|&i| Element(i)).collect()
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    // elements 0..6 in classes 0,0,1,1,2,2; class 0 takes two, the rest one
    let part = PartitionMatroid::new(vec![0, 0, 1, 1, 2, 2], vec![2, 1, 1])?;
    println!("partition: {{0,1,2}} independent = {}", part.is_independent(&els(&[0, 1, 2]))?);
    println!("partition: {{2,3}} independent = {}", part.is_independent(&els(&[2, 3]))?);
    println!("partition: rank of everything = {}", rank(&part, &els(&[0, 1, 2, 3, 4, 5]))?);

    // a triangle plus a pendant edge
    let graph = GraphicMatroid::new(4, vec![(0, 1), (1, 2), (0, 2), (2, 3)])?;
    let tree: ElementSet = els(&[0, 1]).into_iter().collect();
    println!("graphic: edge 2 spanned by {{0,1}} = {}", in_span(&graph, tree.as_slice(), Element(2))?);
    println!("graphic: circuit of {{0,1}} + 2 = {:?}", find_circuit(&graph, &tree, Element(2))?.sorted());

    // contracting edge 0 merges its endpoints, so edge 1 alone closes the triangle with 2
    let c = contract(&graph, &ElementSet::from_indices([0]))?;
    println!("graphic / {{0}}: {{1,2}} independent = {}", c.is_independent(&els(&[1, 2]))?);

    let uni = UniformMatroid::new(5, 2);
    println!("uniform(5,2): rank of all = {}", rank(&uni, &els(&[0, 1, 2, 3, 4]))?);
    println!("oracle calls so far: partition {}, graphic {}, uniform {}", part.calls(), graph.calls(), uni.calls());

    let file = MatroidFile {
        matroids: vec![part.into(), graph.into()],
        ..Default::default()
    };
    let text = format::write(&file);
    println!("\ntext format:\n{text}");
    let back = format::parse(&text)?;
    println!("parsed back {} matroids", back.matroids.len());
    Ok(())
}

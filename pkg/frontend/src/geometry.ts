/**
 * Point-set geometry for trace-coincidence checks.
 *
 * The Hausdorff distance between two orbit traces decides whether three
 * bodies ride one curve. Traces run to ~15k points, so nearest neighbours
 * go through a static KD-tree: build O(m log m), query O(log m), and the
 * cost is independent of how far the two sets sit from each other.
 */

export type Point = [number, number];

interface KdNode {
    point: Point;
    axis: 0 | 1;
    left: KdNode | null;
    right: KdNode | null;
}

export class KdTree {
    private root: KdNode | null;

    constructor(points: Point[]) {
        if (points.length === 0) throw new Error("KdTree needs at least one point");
        this.root = build(points.slice(), 0);
    }

    /** Distance from q to the nearest indexed point. */
    nearestDistance(q: Point): number {
        let best = Infinity;
        const visit = (node: KdNode | null): void => {
            if (!node) return;
            const d = Math.hypot(node.point[0] - q[0], node.point[1] - q[1]);
            if (d < best) best = d;
            const delta = q[node.axis] - node.point[node.axis];
            const [near, far] = delta < 0 ? [node.left, node.right]
                                          : [node.right, node.left];
            visit(near);
            if (Math.abs(delta) < best) visit(far);
        };
        visit(this.root);
        return best;
    }
}

function build(points: Point[], depth: number): KdNode | null {
    if (points.length === 0) return null;
    const axis = (depth % 2) as 0 | 1;
    points.sort((a, b) => a[axis] - b[axis]);
    const mid = points.length >> 1;
    return {
        point: points[mid],
        axis,
        left: build(points.slice(0, mid), depth + 1),
        right: build(points.slice(mid + 1), depth + 1),
    };
}

export function directedHausdorff(from: Point[], to: Point[]): number {
    if (from.length === 0 || to.length === 0) {
        throw new Error("Hausdorff distance needs nonempty point sets");
    }
    const tree = new KdTree(to);
    let worst = 0;
    for (const q of from) {
        const d = tree.nearestDistance(q);
        if (d > worst) worst = d;
    }
    return worst;
}

export function hausdorff(a: Point[], b: Point[]): number {
    return Math.max(directedHausdorff(a, b), directedHausdorff(b, a));
}

/** Largest pairwise Hausdorff distance between the three body traces. */
export function traceCoincidence(traces: [Point[], Point[], Point[]]): number {
    let worst = 0;
    for (let i = 0; i < 3; i++) {
        for (let j = i + 1; j < 3; j++) {
            worst = Math.max(worst, hausdorff(traces[i], traces[j]));
        }
    }
    return worst;
}

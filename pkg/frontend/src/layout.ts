// Small force-directed layout: spring links, pairwise repulsion, soft
// centering.  Deterministic initial placement so repeated runs of the
// same molecule settle the same way.

import type { ViewGraph } from "./molparse.js";

export interface LayoutPoint {
  x: number;
  y: number;
  vx: number;
  vy: number;
}

const SPRING = 0.04;
const SPRING_LENGTH = 46;
const REPULSION = 900;
const CENTERING = 0.012;
const DAMPING = 0.85;

function hash01(n: number, salt: number): number {
  let x = (n + 1) * 2654435761 + salt * 40503;
  x = (x ^ (x >>> 16)) >>> 0;
  return (x % 10000) / 10000;
}

export class ForceLayout {
  points: LayoutPoint[] = [];
  private links: { source: number; target: number }[] = [];

  constructor(readonly width: number, readonly height: number) {}

  /** Reset to a new graph, keeping positions of surviving node indices. */
  setGraph(graph: ViewGraph, keep = true): void {
    const old = keep ? this.points : [];
    this.points = graph.nodes.map((node, i) => {
      if (i < old.length) return old[i];
      return {
        x: this.width * (0.2 + 0.6 * hash01(node.id, 1)),
        y: this.height * (0.2 + 0.6 * hash01(node.id, 2)),
        vx: 0,
        vy: 0,
      };
    });
    this.links = graph.links.map(({ source, target }) => ({ source, target }));
  }

  step(iterations = 1): void {
    for (let it = 0; it < iterations; it++) {
      const pts = this.points;
      for (let i = 0; i < pts.length; i++) {
        for (let j = i + 1; j < pts.length; j++) {
          let dx = pts[j].x - pts[i].x;
          let dy = pts[j].y - pts[i].y;
          let d2 = dx * dx + dy * dy;
          if (d2 < 1) {
            // nudge coincident points apart deterministically
            dx = hash01(i * 31 + j, 3) - 0.5;
            dy = hash01(i * 37 + j, 4) - 0.5;
            d2 = dx * dx + dy * dy;
          }
          const f = REPULSION / d2;
          const d = Math.sqrt(d2);
          const fx = (f * dx) / d;
          const fy = (f * dy) / d;
          pts[i].vx -= fx;
          pts[i].vy -= fy;
          pts[j].vx += fx;
          pts[j].vy += fy;
        }
      }
      for (const { source, target } of this.links) {
        const a = pts[source];
        const b = pts[target];
        const dx = b.x - a.x;
        const dy = b.y - a.y;
        const d = Math.max(1, Math.sqrt(dx * dx + dy * dy));
        const f = SPRING * (d - SPRING_LENGTH);
        const fx = (f * dx) / d;
        const fy = (f * dy) / d;
        a.vx += fx;
        a.vy += fy;
        b.vx -= fx;
        b.vy -= fy;
      }
      const cx = this.width / 2;
      const cy = this.height / 2;
      for (const p of pts) {
        p.vx += (cx - p.x) * CENTERING;
        p.vy += (cy - p.y) * CENTERING;
        p.vx *= DAMPING;
        p.vy *= DAMPING;
        p.x += p.vx;
        p.y += p.vy;
      }
    }
  }

  /** Mean speed; small values mean the layout has settled. */
  energy(): number {
    if (!this.points.length) return 0;
    let total = 0;
    for (const p of this.points) total += Math.hypot(p.vx, p.vy);
    return total / this.points.length;
  }
}

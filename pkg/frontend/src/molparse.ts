// Minimal mol-text reader for the graph view.  One node per line: type
// followed by one edge name per port; " ^ " works as a separator too.

export interface ViewNode {
  id: number;
  type: string;
  ports: string[];
}

export interface ViewLink {
  source: number;
  target: number;
  edge: string;
}

export interface ViewGraph {
  nodes: ViewNode[];
  links: ViewLink[];
  loops: number; // self-loop edges (both endpoints on one node)
}

const ARITY: Record<string, number> = {
  S: 3,
  A: 3,
  Arrow: 2,
  K: 1,
  I: 1,
  FRIN: 1,
  FROUT: 1,
};

export function parseMol(text: string): ViewGraph {
  const nodes: ViewNode[] = [];
  const chunks = text
    .split("\n")
    .flatMap((line) => line.split(" ^ "))
    .map((c) => c.trim())
    .filter((c) => c.length > 0);
  for (const chunk of chunks) {
    const fields = chunk.split(/\s+/);
    const type = fields[0];
    const arity = ARITY[type];
    if (arity === undefined) throw new Error(`unknown node type ${type}`);
    if (fields.length - 1 !== arity) {
      throw new Error(`${type} takes ${arity} edge names, got ${fields.length - 1}`);
    }
    nodes.push({ id: nodes.length, type, ports: fields.slice(1) });
  }

  const endpoints = new Map<string, number[]>();
  for (const node of nodes) {
    for (const edge of node.ports) {
      const list = endpoints.get(edge) ?? [];
      list.push(node.id);
      endpoints.set(edge, list);
    }
  }
  const links: ViewLink[] = [];
  let loops = 0;
  for (const [edge, ids] of endpoints) {
    if (ids.length !== 2) continue; // dangling edges are not drawn
    if (ids[0] === ids[1]) {
      loops += 1;
      continue;
    }
    links.push({ source: ids[0], target: ids[1], edge });
  }
  return { nodes, links, loops };
}

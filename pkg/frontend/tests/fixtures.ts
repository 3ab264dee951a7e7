/**
 * Recorded steering-service responses, captured over HTTP from
 * `sprouts serve` running against a 5-spot basis. Tests render and sort
 * from these payloads so the client stays a pure view of the API.
 */

import type { NodeView, Progress, SessionCreated } from "../src/api.js";

export const createSpots2: SessionCreated = {
  id: "51c153efd5cd",
  root: {
    key: "|0|3-1-L",
    lands: [],
    parity: 0,
    rcts: ["3-1-L"],
    status: "Unknown",
    lives: 0,
    landCount: 0,
    children: [
      {
        key: "|0|2-0-W",
        lands: [],
        parity: 0,
        rcts: ["2-0-W"],
        status: "Unknown",
        lives: 0,
        landCount: 0,
      },
    ],
  },
};

export const progressDone: Progress = {
  status: "done",
  key: "|0|3-1-L",
  result: "L",
  nodesExplored: 4,
  memoSize: 4,
};

export const rootSolved: NodeView = {
  key: "|0|3-1-L",
  lands: [],
  parity: 0,
  rcts: ["3-1-L"],
  status: "L",
  lives: 0,
  landCount: 0,
  children: [
    {
      key: "|0|2-0-W",
      lands: [],
      parity: 0,
      rcts: ["2-0-W"],
      status: "W",
      lives: 0,
      landCount: 0,
    },
  ],
};

/** One land plus parity 1 plus two reduced-tree chips: four independent parts. */
export const fourPartNode: NodeView = {
  key: "0.0.0.0.}]|1|2-0-W,3-1-L",
  lands: ["0.0.0.0.}]"],
  parity: 1,
  rcts: ["2-0-W", "3-1-L"],
  status: "Unknown",
  lives: 12,
  landCount: 1,
  children: [
    {
      key: "0.0.0.0.}]|0|2-0-W,3-1-L",
      lands: ["0.0.0.0.}]"],
      parity: 0,
      rcts: ["2-0-W", "3-1-L"],
      status: "Unknown",
      lives: 12,
      landCount: 1,
    },
    {
      key: "|0|2-0-W,2-0-W,3-1-L",
      lands: [],
      parity: 0,
      rcts: ["2-0-W", "2-0-W", "3-1-L"],
      status: "Unknown",
      lives: 0,
      landCount: 0,
    },
    {
      key: "|0|3-1-L,6-113-L",
      lands: [],
      parity: 0,
      rcts: ["3-1-L", "6-113-L"],
      status: "Unknown",
      lives: 0,
      landCount: 0,
    },
    {
      key: "|1|2-0-W,2-0-W,6-113-L",
      lands: [],
      parity: 1,
      rcts: ["2-0-W", "2-0-W", "6-113-L"],
      status: "Unknown",
      lives: 0,
      landCount: 0,
    },
    {
      key: "|1|2-0-W,3-1-L,5-2-W",
      lands: [],
      parity: 1,
      rcts: ["2-0-W", "3-1-L", "5-2-W"],
      status: "Unknown",
      lives: 0,
      landCount: 0,
    },
    {
      key: "|1|3-1-L,6-113-L",
      lands: [],
      parity: 1,
      rcts: ["3-1-L", "6-113-L"],
      status: "Unknown",
      lives: 0,
      landCount: 0,
    },
  ],
};

export const proofText = [
  "SPROUTS-PROOF v1 root=|0|3-1-L run=ed0357c20242aeba",
  "N |0| W",
  "N |0|2-0-W W |1|",
  "N |0|3-1-L L",
  "N |1| L",
  "",
].join("\n");

export const errorUnknownKey = { error: "bad node key 'zzz'" };
export const errorNotChild = { error: "|1| is not a child of the focus" };

/** A solved view with mixed statuses and lives, for sort-order tests. */
export const mixedChildren: NodeView = {
  ...fourPartNode,
  children: [
    { ...fourPartNode.children![0]!, key: "k-a", status: "Unknown", lives: 12, landCount: 1 },
    { ...fourPartNode.children![1]!, key: "k-b", status: "L", lives: 0, landCount: 0 },
    { ...fourPartNode.children![2]!, key: "k-c", status: "W", lives: 0, landCount: 0 },
    { ...fourPartNode.children![3]!, key: "k-d", status: "W", lives: 4, landCount: 2 },
  ],
};

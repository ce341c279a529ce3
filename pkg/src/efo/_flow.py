"""Tiny exact min-cost-flow solver (successive shortest paths).

Only used for the covering-walk bound, where networks have a few dozen arcs;
Bellman-Ford per augmentation is plenty.
"""

from __future__ import annotations

INF = float("inf")


class MinCostFlow:
    def __init__(self, n: int):
        self.n = n
        self.to: list[int] = []
        self.cap: list[int] = []
        self.cost: list[float] = []
        self.adj: list[list[int]] = [[] for _ in range(n)]

    def add_arc(self, u: int, v: int, cap: int, cost: float) -> None:
        self.adj[u].append(len(self.to))
        self.to.append(v)
        self.cap.append(cap)
        self.cost.append(cost)
        self.adj[v].append(len(self.to))
        self.to.append(u)
        self.cap.append(0)
        self.cost.append(-cost)

    def _shortest(self, s: int):
        dist = [INF] * self.n
        in_arc = [-1] * self.n
        dist[s] = 0.0
        for _ in range(self.n):
            changed = False
            for u in range(self.n):
                du = dist[u]
                if du == INF:
                    continue
                for e in self.adj[u]:
                    if self.cap[e] > 0 and du + self.cost[e] < dist[self.to[e]]:
                        dist[self.to[e]] = du + self.cost[e]
                        in_arc[self.to[e]] = e
                        changed = True
            if not changed:
                break
        return dist, in_arc

    def solve(self, s: int, t: int) -> tuple[int, float]:
        """Max flow of minimum cost from s to t; returns (flow, cost)."""
        if s == t:
            return 0, 0.0
        flow, total = 0, 0.0
        while True:
            dist, in_arc = self._shortest(s)
            if dist[t] == INF:
                break
            push = INF
            v = t
            while v != s:
                e = in_arc[v]
                push = min(push, self.cap[e])
                v = self.to[e ^ 1]
            v = t
            while v != s:
                e = in_arc[v]
                self.cap[e] -= push
                self.cap[e ^ 1] += push
                v = self.to[e ^ 1]
            flow += push
            total += push * dist[t]
        return flow, total

    def arc_flow(self, arc_index: int) -> int:
        """Units pushed through the arc_index-th added arc (0-based, in add order)."""
        return self.cap[2 * arc_index + 1]

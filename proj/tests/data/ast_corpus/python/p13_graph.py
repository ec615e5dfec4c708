from collections import deque


def bfs(graph, start):
    seen = {start}
    order = []
    queue = deque([start])
    while queue:
        node = queue.popleft()
        order.append(node)
        for neighbor in graph.get(node, ()):
            if neighbor not in seen:
                seen.add(neighbor)
                queue.append(neighbor)
    return order


def has_cycle(graph):
    state = {}

    def visit(node):
        state[node] = 1
        for nxt in graph.get(node, ()):
            if state.get(nxt) == 1:
                return True
            if nxt not in state and visit(nxt):
                return True
        state[node] = 2
        return False

    return any(visit(n) for n in graph if n not in state)

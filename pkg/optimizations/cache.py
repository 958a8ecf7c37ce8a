"""
Cache LRU em memória para decomposições espectrais por modo.

Montar a base de autovetores de M(ξ) para todos os modos de uma grade é a parte
cara da propagação linear; a mesma combinação (grade, lei) é reusada em
varreduras de tempo, amplitude e blocos.
"""
from collections import OrderedDict
from typing import Any, Dict, Hashable, Optional
import logging

logger = logging.getLogger(__name__)


class LRUCache:
    """Cache simples LRU (Least Recently Used) com estatísticas de acerto."""

    def __init__(self, maxsize: int = 32):
        """
        Args:
            maxsize: Número máximo de itens no cache
        """
        self.maxsize = maxsize
        self.cache: OrderedDict = OrderedDict()
        self.hits = 0
        self.misses = 0

    def get(self, key: Hashable) -> Optional[Any]:
        """
        Obtém valor do cache se existir.

        Args:
            key: Chave do cache

        Returns:
            Valor cacheado ou None se não existir
        """
        if key not in self.cache:
            self.misses += 1
            return None

        self.cache.move_to_end(key)
        self.hits += 1
        return self.cache[key]

    def set(self, key: Hashable, value: Any) -> None:
        if key in self.cache:
            self.cache.move_to_end(key)
        elif len(self.cache) >= self.maxsize:
            oldest, _ = self.cache.popitem(last=False)
            logger.debug("[CACHE] Removendo entrada antiga %s", oldest)

        self.cache[key] = value

    def invalidate(self, predicate=None) -> int:
        """
        Remove itens do cache.

        Args:
            predicate: Função chave -> bool; se None, remove tudo

        Returns:
            Quantidade de itens removidos
        """
        if predicate is None:
            removed = len(self.cache)
            self.cache.clear()
        else:
            keys_to_remove = [k for k in self.cache if predicate(k)]
            for key in keys_to_remove:
                del self.cache[key]
            removed = len(keys_to_remove)
        logger.info("[CACHE] Cache invalidado: %d itens removidos", removed)
        return removed

    def clear(self) -> None:
        """Limpa todo o cache e zera as estatísticas."""
        self.cache.clear()
        self.hits = 0
        self.misses = 0

    def stats(self) -> Dict[str, Any]:
        total = self.hits + self.misses
        hit_rate = (self.hits / total * 100) if total > 0 else 0

        return {
            "hits": self.hits,
            "misses": self.misses,
            "hit_rate": f"{hit_rate:.2f}%",
            "size": len(self.cache),
            "maxsize": self.maxsize,
        }

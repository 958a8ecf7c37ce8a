# Interface de linha de comando: symbol, simulate, decay, prop31, check

"""
Pacote polycone — geometria convexa exata, monoides afins e aproximação
diofantina, com instanciação tórica dos anéis de seções divisoriais.

Módulos disponíveis:

- ``polycone.config``    — constantes, orçamentos e códigos de saída
- ``polycone.erros``     — exceções do pacote
- ``polycone.scalars``   — aritmética exata em ℚ(√d₁,…,√dₘ) e álgebra linear racional
- ``polycone.polyhedra`` — cones e politopos racionais (descrição dupla)
- ``polycone.monoids``   — bases de Hilbert, saturação, truncamento, pré-imagens
- ``polycone.plfun``     — funções PL côncavas, endireitamento, detecção, Lipschitz
- ``polycone.dioph``     — aproximação diofantina simultânea uniforme
- ``polycone.toric``     — politopos de seções, Fix/Mob, ord assintótico, semigrupos adjuntos
- ``polycone.oracles``   — oráculos de força bruta usados na verificação
- ``polycone.selftest``  — suíte de propriedades executável pelo CLI
- ``polycone.cli``       — CLI JSON-in/JSON-out
"""

__version__ = "0.1.0"

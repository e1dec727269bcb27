char *cwe401_ok_kept_in_global_m_keep;

int cwe401_ok_kept_in_global_m_main(int c) {
  char *p = malloc(16);
  cwe401_ok_kept_in_global_m_keep = p;
  return 0;
}
